#include "qcert/interval.hpp"

#include <array>
#include <algorithm>

namespace qcert {

namespace {

constexpr int kMinBits = 16;

thread_local int g_precision = 192;

int check_bits(int bits) {
  if (bits < kMinBits) {
    throw DomainError("interval precision below " + std::to_string(kMinBits) + " bits");
  }
  return bits;
}

}  // namespace

Interval::Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) {
    throw DomainError("interval with lo > hi");
  }
}

Interval Interval::from_rat(const Rat& r, int bits) {
  check_bits(bits);
  if (r.get_den() == 1) {
    return from_bigint(r.get_num(), bits);
  }
  return Interval(Dyadic::from_rat(r, bits, Round::Down), Dyadic::from_rat(r, bits, Round::Up));
}

Interval Interval::from_bigint(const BigInt& v, int bits) {
  Dyadic d(v);
  return Interval(d.round(bits, Round::Down), d.round(bits, Round::Up));
}

bool Interval::contains(const Rat& r) const {
  return compare(lo_, r) <= 0 && compare(hi_, r) >= 0;
}

std::string Interval::to_string(int digits) const {
  return "[" + lo_.to_decimal(digits, Round::Down) + ", " + hi_.to_decimal(digits, Round::Up) +
         "]";
}

int default_precision() { return g_precision; }

void set_default_precision(int bits) { g_precision = check_bits(bits); }

PrecisionGuard::PrecisionGuard(int bits) : saved_(g_precision) { set_default_precision(bits); }

PrecisionGuard::~PrecisionGuard() { g_precision = saved_; }

Interval iv_add(const Interval& a, const Interval& b, int bits) {
  check_bits(bits);
  return Interval(add_rounded(a.lo(), b.lo(), bits, Round::Down),
                  add_rounded(a.hi(), b.hi(), bits, Round::Up));
}

Interval iv_sub(const Interval& a, const Interval& b, int bits) {
  return iv_add(a, iv_neg(b), bits);
}

Interval iv_neg(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

Interval iv_mul(const Interval& a, const Interval& b, int bits) {
  check_bits(bits);
  if (a.nonnegative() && b.nonnegative()) {
    return Interval(mul_rounded(a.lo(), b.lo(), bits, Round::Down),
                    mul_rounded(a.hi(), b.hi(), bits, Round::Up));
  }
  std::array<Dyadic, 4> p = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
  auto [mn, mx] = std::minmax_element(p.begin(), p.end());
  return Interval(mn->round(bits, Round::Down), mx->round(bits, Round::Up));
}

Interval iv_div(const Interval& a, const Interval& b, int bits) {
  check_bits(bits);
  if (b.contains_zero()) {
    throw DomainError("interval division by an interval containing zero");
  }
  // a / b = a * (1/b) loses a little; dividing endpoints directly keeps it tight.
  std::array<std::pair<const Dyadic*, const Dyadic*>, 4> q = {
      std::pair{&a.lo(), &b.lo()}, std::pair{&a.lo(), &b.hi()}, std::pair{&a.hi(), &b.lo()},
      std::pair{&a.hi(), &b.hi()}};
  Dyadic lo;
  Dyadic hi;
  bool first = true;
  for (auto [x, y] : q) {
    Dyadic d = div_rounded(*x, *y, bits, Round::Down);
    Dyadic u = div_rounded(*x, *y, bits, Round::Up);
    if (first || d < lo) {
      lo = d;
    }
    if (first || hi < u) {
      hi = u;
    }
    first = false;
  }
  return Interval(lo, hi);
}

Interval iv_sqr(const Interval& a, int bits) {
  check_bits(bits);
  if (a.nonnegative()) {
    return iv_mul(a, a, bits);
  }
  if (a.negative()) {
    return iv_mul(iv_neg(a), iv_neg(a), bits);
  }
  Dyadic m = a.mag();
  return Interval(Dyadic(), mul_rounded(m, m, bits, Round::Up));
}

Interval iv_pow_int(const Interval& a, unsigned long k, int bits) {
  if (k == 0) {
    return Interval(1);
  }
  if (k % 2 == 0) {
    Interval h = iv_pow_int(a, k / 2, bits);
    return iv_sqr(h, bits);
  }
  // Odd powers are monotone.
  Interval base = a;
  Interval acc(1);
  unsigned long e = k;
  if (a.nonnegative()) {
    while (e > 0) {
      if (e & 1UL) {
        acc = iv_mul(acc, base, bits);
      }
      e >>= 1;
      if (e > 0) {
        base = iv_mul(base, base, bits);
      }
    }
    return acc;
  }
  if (a.negative()) {
    return iv_neg(iv_pow_int(iv_neg(a), k, bits));
  }
  Interval lo = iv_pow_int(Interval(a.lo()), k, bits);
  Interval hi = iv_pow_int(Interval(a.hi()), k, bits);
  return Interval(lo.lo(), hi.hi());
}

Interval iv_abs(const Interval& a) {
  if (a.nonnegative()) {
    return a;
  }
  if (a.negative()) {
    return iv_neg(a);
  }
  return Interval(Dyadic(), a.mag());
}

Interval iv_round(const Interval& a, int bits) {
  check_bits(bits);
  return Interval(a.lo().round(bits, Round::Down), a.hi().round(bits, Round::Up));
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  const Dyadic& lo = max(a.lo(), b.lo());
  const Dyadic& hi = min(a.hi(), b.hi());
  if (hi < lo) {
    return std::nullopt;
  }
  return Interval(lo, hi);
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(min(a.lo(), b.lo()), max(a.hi(), b.hi()));
}

Interval operator+(const Interval& a, const Interval& b) { return iv_add(a, b, g_precision); }
Interval operator-(const Interval& a, const Interval& b) { return iv_sub(a, b, g_precision); }
Interval operator*(const Interval& a, const Interval& b) { return iv_mul(a, b, g_precision); }
Interval operator/(const Interval& a, const Interval& b) { return iv_div(a, b, g_precision); }
Interval operator-(const Interval& a) { return iv_neg(a); }

}  // namespace qcert
