#include "qcert/error_budget.hpp"

#include "qcert/elementary.hpp"
#include "qcert/expansion.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace qcert {

namespace {

constexpr int kMaxBits = 1536;

Interval R(const Rat& r, int w) { return Interval::from_rat(r, w); }
Interval I(long v) { return Interval(v); }

Dyadic upper(const Interval& v) { return v.hi(); }

ErrorBudget compute_budget(long N, long s, int bits) {
  int w = bits + 32;
  PrecisionGuard guard(w);
  ErrorBudget b;
  b.N = N;
  b.s = s;
  b.n_min = n_min(N, s, bits);

  Interval pi = enclose_pi(w);
  Interval sqrt3 = enclose_sqrt(I(3), w);
  Interval sigma = R(make_rat(24 * s + 1, 24), w);
  Interval sqrt_sigma = enclose_sqrt(sigma, w);
  Interval ch = enclose_cosh(pi * enclose_sqrt(R(make_rat(24 * s + 1, 72), w), w), w);
  Interval a_N = R(abs(a_coeff(N)), w);
  Interval a_N1 = R(abs(a_coeff(N + 1)), w);
  Interval pi_over_2sqrt3 = pi / (I(2) * sqrt3);
  Interval four_thirds = R(make_rat(4, 3), w);

  // Bessel remainder constant.
  Interval logN1 = enclose_log(I(N + 1), w);
  Interval inner = (I(1) + I(9) / logN1 + I(9) / I(N + 2)) / enclose_sqrt(I(2) * pi, w) +
                   (enclose_sqrt(I(2), w) + enclose_pow_half(R(make_rat(2 * N + 5, 2), w), -1, w)) /
                       logN1;
  Interval er_n1 = enclose_pow_half(I(3), N + 1, w) / iv_pow_int(pi, N + 1, w) * inner * a_N1;

  Interval er2 = four_thirds * enclose_sqrt(I(2) * pi / I(3), w) * enclose_pow_half(I(N), -3, w) *
                 enclose_pow_half(sigma, N + 2, w) * ch;

  Interval er3 = four_thirds * enclose_pow_half(sigma, N + 1, w);

  Interval sqrt_pi_24s1 = enclose_sqrt(pi * I(24 * s + 1), w);
  Interval er4 = (four_thirds * enclose_pow_half(I(N), 3, w) + I(1)) * er2 +
                 pi_over_2sqrt3 * enclose_pow_half(sigma, N + 2, w) +
                 er3 * (I(1) + pi_over_2sqrt3 * sigma + sqrt_pi_24s1 / I(72) * ch);

  Interval three_over_pi2 = I(3) / (pi * pi);
  Interval sqrt3_over_pi = sqrt3 / pi;
  Interval er5 = four_thirds * a_N * iv_pow_int(sigma + three_over_pi2, N / 2 + 1, w) +
                 I(4) * a_N / (sqrt3 * pi) *
                     iv_pow_int(sqrt_sigma + sqrt3_over_pi, 2 * ((N - 1) / 2) + 2, w);

  Interval small = I(3) / (pi * enclose_sqrt(I(2 * (24 * s + 1)), w));
  Interval er6 = I(8) * iv_pow_int(sqrt3_over_pi, N + 1, w) * a_N +
                 (I(1) + I(4) * iv_pow_int(small, N + 1, w)) * (er5 + er_n1);

  Interval a_s = I(1) + pi_over_2sqrt3 * sqrt_sigma + sqrt_pi_24s1 / I(12) * ch;

  Interval two_pow_N1(Dyadic::pow2(N - 1));
  Interval two_pow_Np1(Dyadic::pow2(N + 1));
  Interval er_N =
      a_N * (pi * two_pow_N1 / sqrt3 * sqrt_sigma + a_s * (I(1) + two_pow_Np1 / I(3))) *
          enclose_pow_half(sigma, N + 1, w) +
      (I(1) + pi_over_2sqrt3 * sigma + a_s / I(12)) * er6 + I(2) * a_N * er4 +
      er4 * er6 / enclose_pow_half(I(b.n_min), N + 1, w);

  auto up = [bits](const Interval& v) { return upper(v).round(bits, Round::Up); };
  b.er_n1 = up(er_n1);
  b.er2 = up(er2);
  b.er3 = up(er3);
  b.er4 = up(er4);
  b.er5 = up(er5);
  b.er6 = up(er6);
  b.a_s = up(a_s);
  b.er_N = up(er_N);
  return b;
}

Interval x_of(long n, int w) { return enclose_pow_half(I(n), -1, w); }

}  // namespace

Interval N0(long m, int bits) {
  if (m < 1) {
    throw DomainError("N0 requires m >= 1");
  }
  if (m == 1) {
    return I(1);
  }
  int w = bits + 16;
  Interval lm = enclose_log(I(m), w);
  Interval llm = enclose_log(lm, w);
  return iv_round(iv_sub(iv_mul(I(4 * m), lm, w), iv_mul(I(3 * m), llm, w), w), bits);
}

long n_min(long N, long s, int bits) {
  if (N < 1 || s < 0) {
    throw DomainError("n_min requires N >= 1 and s >= 0");
  }
  int w = bits + 16;
  Interval n0 = N0(N + 2, w);
  Interval pi = enclose_pi(w);
  Interval term = iv_div(iv_sub(iv_div(iv_mul(I(72), iv_sqr(n0, w), w), iv_sqr(pi, w), w), I(1), w),
                         I(24), w);
  long from_n0 = term.hi().ceil().get_si();
  long from_s = (2 * (24 * s + 1) + 2) / 3;  // ceil(2(24s+1)/3)
  return std::max({206L, from_n0, from_s});
}

ErrorBudget er_budget(long N, long s, int bits) {
  if (N < 1 || s < 0) {
    throw DomainError("er_budget requires N >= 1 and s >= 0");
  }
  static std::map<std::tuple<long, long, int>, ErrorBudget> cache;
  static std::mutex mu;
  std::tuple<long, long, int> key{N, s, bits};
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      return it->second;
    }
  }
  ErrorBudget b = compute_budget(N, s, bits);
  std::lock_guard lock(mu);
  cache.emplace(key, b);
  return b;
}

Interval nu(long n, int bits) {
  if (n < 0) {
    throw DomainError("nu requires n >= 0");
  }
  int w = bits + 16;
  PrecisionGuard guard(w);
  Interval v = enclose_pi(w) * enclose_sqrt(I(24 * n + 1), w) / (I(6) * enclose_sqrt(I(2), w));
  return iv_round(v, bits);
}

Interval M_of_n(long n, int bits) {
  int w = bits + 16;
  PrecisionGuard guard(w);
  Interval v = nu(n, w);
  Interval pi = enclose_pi(w);
  Interval m = enclose_sqrt(I(2), w) * pi * pi / (I(12) * v) * enclose_bessel_i1(v, w);
  return iv_round(m, bits);
}

BesselSandwich bessel_sandwich_check(const QTable& t, long n, long m, int bits) {
  for (int w = bits; w <= kMaxBits; w *= 2) {
    PrecisionGuard guard(w);
    Interval v = nu(n, w);
    Interval n0 = N0(m + 1, w);
    Dyadic need = max(Dyadic(26), n0.hi());
    if (v.hi() < max(Dyadic(26), n0.lo())) {
      return BesselSandwich::out_of_regime;
    }
    if (v.lo() < need) {
      continue;  // precondition undecided at this precision
    }
    Interval M = M_of_n(n, w);
    Interval eps = I(4) / iv_pow_int(v, static_cast<unsigned long>(m), w);
    Interval lo = M * (I(1) - eps);
    Interval hi = M * (I(1) + eps);
    Interval q = Interval::from_bigint(t.at(n), w + 64);
    if (lo.hi() <= q.lo() && q.hi() <= hi.lo()) {
      return BesselSandwich::holds;
    }
    if (q.hi() < lo.lo() || hi.hi() < q.lo()) {
      return BesselSandwich::fails;
    }
  }
  return BesselSandwich::out_of_regime;
}

Interval prefactor(long n, int bits) {
  if (n < 1) {
    throw DomainError("prefactor requires n >= 1");
  }
  int w = bits + 32;
  PrecisionGuard guard(w);
  Interval e = enclose_exp(enclose_pi(w) * enclose_sqrt(iv_div(I(n), I(3), w), w), w);
  Interval denom = I(4) * enclose_sqrt(enclose_sqrt(I(3), w + 8), w) *
                   enclose_pow_half(enclose_sqrt(I(n), w + 8), 3, w);
  return iv_round(e / denom, bits);
}

BoundPoly bound_poly(long s, long N, Side side, int bits) {
  ErrorBudget b = er_budget(N, s, bits);
  CoeffContext ctx(s);
  BoundPoly p;
  p.s = s;
  p.N = N;
  p.side = side;
  for (long m = 0; m <= N; ++m) {
    p.coeffs.push_back(Bhat_coeff(m, ctx));
  }
  p.err = side == Side::lower ? -b.er_N : b.er_N;
  p.x_max = x_of(b.n_min, bits).hi();
  return p;
}

Interval bound_value(long n, long s, long N, Side side, int bits) {
  long lo = n_min(N, s, bits);
  if (n < lo) {
    throw DomainError("bound_value: n = " + std::to_string(n) + " is below n(N,s) = " +
                      std::to_string(lo));
  }
  BoundPoly p = bound_poly(s, N, side, bits);
  int w = bits + 32;
  PrecisionGuard guard(w);
  Interval x = x_of(n, w);
  Interval acc(p.err);
  for (long m = N; m >= 0; --m) {
    acc = acc * x + ring_eval(p.coeffs[static_cast<std::size_t>(m)], w);
  }
  return iv_round(acc * prefactor(n, w), bits);
}

bool sandwich_holds(const QTable& t, long n, long s, long N, int bits) {
  const BigInt& q = t.at(n + s);
  Rat qr(q);
  for (int w = bits; w <= kMaxBits; w *= 2) {
    Interval lower = bound_value(n, s, N, Side::lower, w);
    Interval upper_v = bound_value(n, s, N, Side::upper, w);
    bool low_ok = compare(lower.hi(), qr) <= 0;
    bool up_ok = compare(upper_v.lo(), qr) >= 0;
    if (low_ok && up_ok) {
      return true;
    }
    if (compare(lower.lo(), qr) > 0 || compare(upper_v.hi(), qr) < 0) {
      return false;
    }
  }
  return false;
}

}  // namespace qcert
