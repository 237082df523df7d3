#pragma once

#include "qcert/bigint.hpp"

#include <compare>
#include <cstdint>
#include <string>

namespace qcert {

enum class Round { Down, Up };

// Exact binary floating value mantissa * 2^exponent, kept with an odd
// mantissa (or zero with exponent 0). Arithmetic operators are exact; the
// rounded variants take a bit budget and a direction.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long v);  // NOLINT(google-explicit-constructor)
  explicit Dyadic(const BigInt& v);
  Dyadic(BigInt mantissa, std::int64_t exponent);

  static Dyadic from_rat(const Rat& r, int bits, Round dir);
  static Dyadic pow2(std::int64_t e) { return Dyadic(BigInt(1), e); }

  const BigInt& mantissa() const { return man_; }
  std::int64_t exponent() const { return exp_; }
  int sign() const { return sgn(man_); }
  bool is_zero() const { return man_ == 0; }
  // Bits in |mantissa|; 0 for zero.
  std::int64_t bit_length() const;
  // floor(log2|x|) + 1, i.e. exponent of the leading bit plus one.
  std::int64_t top() const { return exp_ + bit_length(); }

  Dyadic round(int bits, Round dir) const;
  Dyadic ldexp(std::int64_t k) const;
  Dyadic abs() const;

  Rat to_rat() const;
  double to_double() const;
  // Scientific notation with `digits` significant digits, rounded in `dir`.
  std::string to_decimal(int digits, Round dir) const;
  BigInt floor() const;
  BigInt ceil() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a);

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.man_ == b.man_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
  friend std::strong_ordering compare(const Dyadic& a, const Rat& r);

 private:
  void canonicalize();

  BigInt man_ = 0;
  std::int64_t exp_ = 0;
};

// Rounded a + b that never materialises huge mantissas when exponents are far apart.
Dyadic add_rounded(const Dyadic& a, const Dyadic& b, int bits, Round dir);
Dyadic mul_rounded(const Dyadic& a, const Dyadic& b, int bits, Round dir);
Dyadic div_rounded(const Dyadic& a, const Dyadic& b, int bits, Round dir);
Dyadic sqrt_rounded(const Dyadic& a, int bits, Round dir);

inline const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

}  // namespace qcert
