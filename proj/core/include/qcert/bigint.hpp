#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qcert {

using BigInt = mpz_class;
using Rat = mpq_class;

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

// Always "p/q", including q = 1.
inline std::string to_string(const Rat& v) {
  return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt pow(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Rat pow(const Rat& b, long e) {
  Rat base = e < 0 ? Rat(1) / b : b;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rat r(mpz_class(pow(base.get_num(), k)), mpz_class(pow(base.get_den(), k)));
  r.canonicalize();
  return r;
}

// Parses a plain decimal literal such as "-3.1415e2" exactly.
Rat parse_decimal(const std::string& text);

}  // namespace qcert
