#pragma once

#include "qcert/bigint.hpp"
#include "qcert/interval.hpp"

#include <map>
#include <string>
#include <utility>

namespace qcert {

// Element of Q[pi, 1/pi, sqrt3]: sum of r * pi^i * sqrt3^j with j in {0, 1}.
// pi is treated as an indeterminate, so the empty map is the only zero.
class RingElem {
 public:
  using Key = std::pair<int, int>;  // (power of pi, power of sqrt3)

  RingElem() = default;
  RingElem(const Rat& r);  // NOLINT(google-explicit-constructor)
  RingElem(long v) : RingElem(Rat(v)) {}  // NOLINT(google-explicit-constructor)

  static RingElem monomial(const Rat& c, int pi_power, int sqrt3_power);
  static RingElem pi(int power = 1) { return monomial(Rat(1), power, 0); }
  static RingElem sqrt3() { return monomial(Rat(1), 0, 1); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, Rat>& terms() const { return terms_; }
  // Coefficient of pi^i sqrt3^j (zero if absent).
  Rat coeff(int pi_power, int sqrt3_power) const;
  bool is_rational() const;

  // "c pi^i sqrt3^j + ..." with every c written as p/q.
  std::string to_string() const;

  RingElem& operator+=(const RingElem& o);
  RingElem& operator-=(const RingElem& o);
  RingElem& operator*=(const RingElem& o);

  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  friend RingElem operator-(const RingElem& a);
  friend bool operator==(const RingElem& a, const RingElem& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Key& k, const Rat& c);
  std::map<Key, Rat> terms_;
};

// Encloses the real value, substituting certified pi and sqrt3.
Interval ring_eval(const RingElem& e, int bits);

}  // namespace qcert
