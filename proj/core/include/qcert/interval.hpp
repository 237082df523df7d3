#pragma once

#include "qcert/dyadic.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace qcert {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Closed interval [lo, hi] with dyadic endpoints. Every operation rounds
// outward, so the true value of any expression stays enclosed.
class Interval {
 public:
  Interval() = default;
  Interval(long v) : lo_(v), hi_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Interval(const Dyadic& v) : lo_(v), hi_(v) {}
  Interval(Dyadic lo, Dyadic hi);

  static Interval from_rat(const Rat& r, int bits);
  static Interval from_bigint(const BigInt& v, int bits);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }

  bool is_point() const { return lo_ == hi_; }
  bool contains(const Rat& r) const;
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }
  bool nonnegative() const { return lo_.sign() >= 0; }

  Dyadic width() const { return hi_ - lo_; }
  Dyadic mid() const { return (lo_ + hi_).ldexp(-1); }
  Dyadic mag() const { return max(lo_.abs(), hi_.abs()); }

  std::string to_string(int digits = 12) const;

 private:
  Dyadic lo_;
  Dyadic hi_;
};

// Working precision for the overloaded operators. Explicit iv_* calls take
// the precision as an argument instead.
int default_precision();
void set_default_precision(int bits);

class PrecisionGuard {
 public:
  explicit PrecisionGuard(int bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  int saved_;
};

Interval iv_add(const Interval& a, const Interval& b, int bits);
Interval iv_sub(const Interval& a, const Interval& b, int bits);
Interval iv_mul(const Interval& a, const Interval& b, int bits);
Interval iv_div(const Interval& a, const Interval& b, int bits);
Interval iv_neg(const Interval& a);
Interval iv_sqr(const Interval& a, int bits);
Interval iv_pow_int(const Interval& a, unsigned long k, int bits);
Interval iv_abs(const Interval& a);
Interval iv_round(const Interval& a, int bits);

std::optional<Interval> intersect(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

inline bool operator==(const Interval& a, const Interval& b) {
  return a.lo() == b.lo() && a.hi() == b.hi();
}

}  // namespace qcert
