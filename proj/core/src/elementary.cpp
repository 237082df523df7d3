#include "qcert/elementary.hpp"

#include <map>
#include <mutex>

namespace qcert {

namespace {

constexpr int kGuard = 24;

Interval symmetric(const Dyadic& r) {
  Dyadic a = r.abs();
  return Interval(-a, a);
}

// Sum of the series 1/((2j+1) k^(2j+1)) with alternating signs, i.e. atan(1/k).
Interval atan_inv(unsigned long k, int w) {
  Interval sum(0);
  BigInt kk = k;
  BigInt k2 = kk * kk;
  BigInt power = kk;
  Dyadic eps = Dyadic::pow2(-w - 4);
  for (unsigned long j = 0;; ++j) {
    Rat term(BigInt(1), BigInt(power * (2 * j + 1)));
    Interval t = Interval::from_rat(term, w);
    if (t.hi() < eps) {
      // Alternating with decreasing terms: the tail is bounded by this term.
      return iv_add(sum, symmetric(t.hi()), w);
    }
    sum = (j % 2 == 0) ? iv_add(sum, t, w) : iv_sub(sum, t, w);
    power *= k2;
  }
}

// 2 * atanh(z) for |z| <= 1/2 via the odd series.
Interval two_atanh(const Interval& z, int w) {
  Interval z2 = iv_sqr(z, w);
  Interval power = z;
  Interval sum(0);
  Dyadic eps = Dyadic::pow2(-w - 4);
  for (unsigned long j = 0;; ++j) {
    Interval t = iv_div(power, Interval(static_cast<long>(2 * j + 1)), w);
    if (t.mag() < eps) {
      // Ratio of successive terms is at most z^2 <= 1/4, so the tail is below 2|t|.
      sum = iv_add(sum, symmetric(t.mag().ldexp(1)), w);
      break;
    }
    sum = iv_add(sum, t, w);
    power = iv_mul(power, z2, w);
  }
  return iv_add(sum, sum, w);
}

template <typename F>
Interval cached(std::map<int, Interval>& cache, std::mutex& mu, int bits, F compute) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(bits);
  if (it != cache.end()) {
    return it->second;
  }
  Interval v = compute();
  cache.emplace(bits, v);
  return v;
}

Interval exp_point(const Dyadic& x, int bits) {
  if (x.is_zero()) {
    return Interval(1);
  }
  std::int64_t k = x.top() + 8;
  if (k < 0) {
    k = 0;
  }
  int w = bits + kGuard + static_cast<int>(k);
  Interval r(x.ldexp(-k));
  Interval sum(1);
  Interval term(1);
  Dyadic eps = Dyadic::pow2(-w - 4);
  for (long j = 1;; ++j) {
    term = iv_div(iv_mul(term, r, w), Interval(j), w);
    if (term.mag() < eps) {
      // |r| <= 2^-8 makes the tail a geometric series with ratio below 1/2.
      sum = iv_add(sum, symmetric(term.mag().ldexp(1)), w);
      break;
    }
    sum = iv_add(sum, term, w);
  }
  for (std::int64_t i = 0; i < k; ++i) {
    sum = iv_sqr(sum, w);
  }
  return iv_round(sum, bits);
}

Interval log_point(const Dyadic& y, int bits) {
  if (y.sign() <= 0) {
    throw DomainError("log of a non-positive value");
  }
  int w = bits + kGuard;
  std::int64_t k = y.top();
  Dyadic m = y.ldexp(-k);  // in [1/2, 1)
  if (m * m < Dyadic::pow2(-1)) {
    m = m.ldexp(1);
    k -= 1;
  }
  Interval mi(m);
  Interval z = iv_div(iv_sub(mi, Interval(1), w), iv_add(mi, Interval(1), w), w);
  Interval r = two_atanh(z, w);
  if (k != 0) {
    r = iv_add(r, iv_mul(Interval(static_cast<long>(k)), enclose_log2(w), w), w);
  }
  return iv_round(r, bits);
}

Interval cosh_point(const Dyadic& x, int bits) {
  int w = bits + 8;
  Interval e = exp_point(x, w);
  Interval s = iv_add(e, iv_div(Interval(1), e, w), w);
  return iv_round(Interval(s.lo().ldexp(-1), s.hi().ldexp(-1)), bits);
}

Interval sinh_point(const Dyadic& x, int bits) {
  int w = bits + 8 + static_cast<int>(x.top() < 0 ? -x.top() : 0);
  Interval e = exp_point(x, w);
  Interval s = iv_sub(e, iv_div(Interval(1), e, w), w);
  return iv_round(Interval(s.lo().ldexp(-1), s.hi().ldexp(-1)), bits);
}

Interval i1_point(const Dyadic& x, int bits) {
  if (x.is_zero()) {
    return Interval(0);
  }
  int w = bits + kGuard + 16;
  Interval h(x.ldexp(-1));
  Interval h2 = iv_sqr(h, w);
  Interval term = h;  // k = 0 term: (x/2) / (0! 1!)
  Interval sum = term;
  for (long k = 0;; ++k) {
    Interval next = iv_div(iv_mul(term, h2, w), Interval((k + 1) * (k + 2)), w);
    // Once the ratio bound h2/((k+1)(k+2)) is at most 1/2 and the term is tiny
    // relative to the sum, the remaining tail is below 2*next.
    Interval ratio = iv_div(h2, Interval((k + 1) * (k + 2)), w);
    if (ratio.hi() <= Dyadic::pow2(-1) && next.hi() < sum.lo().ldexp(-w - 4)) {
      sum = iv_add(sum, Interval(Dyadic(), next.hi().ldexp(1)), w);
      break;
    }
    sum = iv_add(sum, next, w);
    term = next;
  }
  return iv_round(sum, bits);
}

}  // namespace

Interval enclose_pi(int bits) {
  static std::map<int, Interval> cache;
  static std::mutex mu;
  return cached(cache, mu, bits, [bits] {
    int w = bits + kGuard;
    Interval a = iv_mul(Interval(16), atan_inv(5, w), w);
    Interval b = iv_mul(Interval(4), atan_inv(239, w), w);
    return iv_round(iv_sub(a, b, w), bits);
  });
}

Interval enclose_log2(int bits) {
  static std::map<int, Interval> cache;
  static std::mutex mu;
  return cached(cache, mu, bits, [bits] {
    int w = bits + kGuard;
    Interval third = iv_div(Interval(1), Interval(3), w);
    return iv_round(two_atanh(third, w), bits);
  });
}

Interval enclose_sqrt(const Interval& x, int bits) {
  if (x.lo().sign() < 0) {
    throw DomainError("sqrt of an interval with negative part");
  }
  return Interval(sqrt_rounded(x.lo(), bits, Round::Down), sqrt_rounded(x.hi(), bits, Round::Up));
}

Interval enclose_exp(const Interval& x, int bits) {
  Dyadic lo = exp_point(x.lo(), bits).lo();
  if (x.is_point()) {
    return Interval(lo, exp_point(x.lo(), bits).hi());
  }
  return Interval(lo, exp_point(x.hi(), bits).hi());
}

Interval enclose_log(const Interval& x, int bits) {
  if (!x.positive()) {
    throw DomainError("log of an interval that is not strictly positive");
  }
  Interval a = log_point(x.lo(), bits);
  if (x.is_point()) {
    return a;
  }
  return Interval(a.lo(), log_point(x.hi(), bits).hi());
}

Interval enclose_cosh(const Interval& x, int bits) {
  Interval a = iv_abs(x);
  Interval lo = cosh_point(a.lo(), bits);
  if (a.is_point()) {
    return lo;
  }
  return Interval(lo.lo(), cosh_point(a.hi(), bits).hi());
}

Interval enclose_sinh(const Interval& x, int bits) {
  Interval lo = sinh_point(x.lo(), bits);
  if (x.is_point()) {
    return lo;
  }
  return Interval(lo.lo(), sinh_point(x.hi(), bits).hi());
}

Interval enclose_bessel_i1(const Interval& x, int bits) {
  if (x.lo().sign() < 0) {
    throw DomainError("bessel_i1 enclosure requires x >= 0");
  }
  Interval lo = i1_point(x.lo(), bits);
  if (x.is_point()) {
    return lo;
  }
  return Interval(lo.lo(), i1_point(x.hi(), bits).hi());
}

Interval enclose_pow_half(const Interval& x, long k, int bits) {
  if (!x.positive()) {
    throw DomainError("fractional power of an interval that is not strictly positive");
  }
  int w = bits + kGuard;
  unsigned long a = static_cast<unsigned long>(k < 0 ? -k : k);
  Interval base = (a % 2 == 0) ? x : enclose_sqrt(x, w + 8);
  unsigned long e = (a % 2 == 0) ? a / 2 : a;
  Interval r = iv_pow_int(base, e, w);
  if (k < 0) {
    r = iv_div(Interval(1), r, w);
  }
  return iv_round(r, bits);
}

Interval enclose_pow(const Interval& x, const Rat& y, int bits) {
  if (!x.positive()) {
    throw DomainError("real power of an interval that is not strictly positive");
  }
  if (y.get_den() == 1 || y.get_den() == 2) {
    Rat twice = y * 2;
    return enclose_pow_half(x, twice.get_num().get_si(), bits);
  }
  int w = bits + kGuard + 16;
  Interval l = enclose_log(x, w);
  Interval p = iv_mul(l, Interval::from_rat(y, w), w);
  return iv_round(enclose_exp(p, w), bits);
}

}  // namespace qcert
