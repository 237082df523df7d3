#include "qcert/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace qcert {

Rat parse_decimal(const std::string& text) {
  std::string s = text;
  std::int64_t exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    exp10 = std::stoll(s.substr(e + 1));
    s = s.substr(0, e);
  }
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  std::string digits;
  for (char c : s) {
    if (c == '.') {
      continue;
    }
    if (c < '0' || c > '9') {
      throw std::invalid_argument("parse_decimal: bad literal '" + text + "'");
    }
    digits.push_back(c);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    exp10 -= static_cast<std::int64_t>(s.size() - dot - 1);
  }
  if (digits.empty()) {
    throw std::invalid_argument("parse_decimal: bad literal '" + text + "'");
  }
  Rat r{BigInt(digits, 10)};
  if (neg) {
    r = -r;
  }
  BigInt scale = pow(BigInt(10), static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 >= 0) {
    r *= scale;
  } else {
    r /= scale;
  }
  r.canonicalize();
  return r;
}

Dyadic::Dyadic(long v) : man_(v), exp_(0) { canonicalize(); }

Dyadic::Dyadic(const BigInt& v) : man_(v), exp_(0) { canonicalize(); }

Dyadic::Dyadic(BigInt mantissa, std::int64_t exponent)
    : man_(std::move(mantissa)), exp_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (man_ == 0) {
    exp_ = 0;
    return;
  }
  mp_bitcnt_t tz = mpz_scan1(man_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
    exp_ += static_cast<std::int64_t>(tz);
  }
}

std::int64_t Dyadic::bit_length() const {
  if (man_ == 0) {
    return 0;
  }
  return static_cast<std::int64_t>(mpz_sizeinbase(man_.get_mpz_t(), 2));
}

Dyadic Dyadic::round(int bits, Round dir) const {
  std::int64_t len = bit_length();
  if (len <= bits) {
    return *this;
  }
  auto shift = static_cast<mp_bitcnt_t>(len - bits);
  BigInt m;
  if (dir == Round::Down) {
    mpz_fdiv_q_2exp(m.get_mpz_t(), man_.get_mpz_t(), shift);
  } else {
    mpz_cdiv_q_2exp(m.get_mpz_t(), man_.get_mpz_t(), shift);
  }
  return Dyadic(std::move(m), exp_ + static_cast<std::int64_t>(shift));
}

Dyadic Dyadic::ldexp(std::int64_t k) const {
  Dyadic r = *this;
  if (!r.is_zero()) {
    r.exp_ += k;
  }
  return r;
}

Dyadic Dyadic::abs() const {
  Dyadic r = *this;
  r.man_ = qcert::BigInt(::abs(man_));
  return r;
}

Dyadic Dyadic::from_rat(const Rat& r, int bits, Round dir) {
  return div_rounded(Dyadic(r.get_num()), Dyadic(r.get_den()), bits, dir);
}

Rat Dyadic::to_rat() const {
  if (exp_ >= 0) {
    BigInt m = man_;
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
    return Rat(m);
  }
  BigInt d = 1;
  mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
  Rat r(man_, d);
  r.canonicalize();
  return r;
}

double Dyadic::to_double() const {
  if (man_ == 0) {
    return 0.0;
  }
  long e = 0;
  double m = mpz_get_d_2exp(&e, man_.get_mpz_t());
  return std::ldexp(m, static_cast<int>(e + exp_));
}

BigInt Dyadic::floor() const {
  BigInt r = man_;
  if (exp_ >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
  }
  return r;
}

BigInt Dyadic::ceil() const {
  BigInt r = man_;
  if (exp_ >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
  } else {
    mpz_cdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
  }
  return r;
}

std::string Dyadic::to_decimal(int digits, Round dir) const {
  if (man_ == 0) {
    return "0";
  }
  Rat v = to_rat();
  bool neg = v < 0;
  Rat a = neg ? Rat(-v) : v;
  // Estimate the decimal exponent, then correct it exactly.
  long e10 = static_cast<long>(std::floor(static_cast<double>(top() - 1) * std::log10(2.0)));
  auto scaled = [&](long e) {
    long shift = digits - 1 - e;
    Rat t = a;
    BigInt p = pow(BigInt(10), static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0) {
      t *= p;
    } else {
      t /= p;
    }
    return t;
  };
  BigInt lower = pow(BigInt(10), static_cast<unsigned long>(digits - 1));
  BigInt upper = lower * 10;
  for (int guard = 0; guard < 8; ++guard) {
    Rat t = scaled(e10);
    if (t < Rat(lower)) {
      --e10;
    } else if (t >= Rat(upper)) {
      ++e10;
    } else {
      break;
    }
  }
  Rat t = scaled(e10);
  // Rounding the magnitude away from zero is "up" for positives, "down" for negatives.
  bool away = (dir == Round::Up) != neg;
  BigInt q;
  if (away) {
    mpz_cdiv_q(q.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  } else {
    mpz_fdiv_q(q.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  }
  if (q == upper) {
    q = lower;
    ++e10;
  }
  std::string ds = q.get_str(10);
  std::string out = neg ? "-" : "";
  out += ds.substr(0, 1);
  if (ds.size() > 1) {
    out += "." + ds.substr(1);
  }
  out += "e" + std::to_string(e10);
  return out;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) {
    return b;
  }
  if (b.is_zero()) {
    return a;
  }
  std::int64_t e = std::min(a.exp_, b.exp_);
  BigInt ma = a.man_;
  BigInt mb = b.man_;
  if (a.exp_ > e) {
    mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exp_ - e));
  }
  if (b.exp_ > e) {
    mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), static_cast<mp_bitcnt_t>(b.exp_ - e));
  }
  return Dyadic(BigInt(ma + mb), e);
}

Dyadic operator-(const Dyadic& a) {
  Dyadic r = a;
  r.man_ = -r.man_;
  return r;
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(BigInt(a.man_ * b.man_), a.exp_ + b.exp_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int sa = a.sign();
  int sb = b.sign();
  if (sa != sb) {
    return sa <=> sb;
  }
  if (sa == 0) {
    return std::strong_ordering::equal;
  }
  // Same sign: compare leading-bit positions before touching mantissas.
  std::int64_t ta = a.top();
  std::int64_t tb = b.top();
  if (ta != tb) {
    return sa > 0 ? (ta <=> tb) : (tb <=> ta);
  }
  Dyadic d = a - b;
  return d.sign() <=> 0;
}

std::strong_ordering compare(const Dyadic& a, const Rat& r) {
  int c = cmp(a.to_rat(), r);
  return c <=> 0;
}

Dyadic add_rounded(const Dyadic& a, const Dyadic& b, int bits, Round dir) {
  if (a.is_zero()) {
    return b.round(bits, dir);
  }
  if (b.is_zero()) {
    return a.round(bits, dir);
  }
  const Dyadic& big = a.top() >= b.top() ? a : b;
  const Dyadic& small = a.top() >= b.top() ? b : a;
  std::int64_t floor_pos = big.top() - bits - 4;
  if (small.top() < floor_pos) {
    // |small| is below every bit that survives rounding. Replace it by a value
    // that moves the sum no less in the rounding direction.
    bool helps = (small.sign() > 0) == (dir == Round::Up);
    if (!helps) {
      return big.round(bits, dir);
    }
    Dyadic bump = Dyadic::pow2(floor_pos);
    return (dir == Round::Up ? big + bump : big - bump).round(bits, dir);
  }
  return (a + b).round(bits, dir);
}

Dyadic mul_rounded(const Dyadic& a, const Dyadic& b, int bits, Round dir) {
  return (a * b).round(bits, dir);
}

Dyadic div_rounded(const Dyadic& a, const Dyadic& b, int bits, Round dir) {
  if (b.is_zero()) {
    throw std::domain_error("div_rounded: division by zero");
  }
  if (a.is_zero()) {
    return Dyadic();
  }
  std::int64_t k = bits + 2 + b.bit_length() - a.bit_length();
  if (k < 0) {
    k = 0;
  }
  BigInt num = a.mantissa();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  BigInt q;
  if (dir == Round::Down) {
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
  } else {
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
  }
  return Dyadic(std::move(q), a.exponent() - b.exponent() - k).round(bits, dir);
}

Dyadic sqrt_rounded(const Dyadic& a, int bits, Round dir) {
  if (a.sign() < 0) {
    throw std::domain_error("sqrt_rounded: negative argument");
  }
  if (a.is_zero()) {
    return Dyadic();
  }
  std::int64_t e = a.exponent();
  std::int64_t shift = 2 * bits + 4 - a.bit_length();
  if (shift < 0) {
    shift = 0;
  }
  if ((e - shift) % 2 != 0) {
    ++shift;
  }
  BigInt m = a.mantissa();
  mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
  if (dir == Round::Up && r * r != m) {
    r += 1;
  }
  return Dyadic(std::move(r), (e - shift) / 2).round(bits, dir);
}

}  // namespace qcert
