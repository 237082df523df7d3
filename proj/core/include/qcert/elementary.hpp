#pragma once

#include "qcert/interval.hpp"

namespace qcert {

// Certified enclosures of elementary functions. `bits` is the target
// precision; internal guard bits are added as needed.

Interval enclose_pi(int bits);
Interval enclose_log2(int bits);

Interval enclose_sqrt(const Interval& x, int bits);
Interval enclose_exp(const Interval& x, int bits);
Interval enclose_log(const Interval& x, int bits);
Interval enclose_cosh(const Interval& x, int bits);
Interval enclose_sinh(const Interval& x, int bits);

// Modified Bessel function I_1 on x >= 0.
Interval enclose_bessel_i1(const Interval& x, int bits);

// x^(k/2) for x > 0 and any integer k.
Interval enclose_pow_half(const Interval& x, long k, int bits);
// x^y for x > 0 and rational y.
Interval enclose_pow(const Interval& x, const Rat& y, int bits);

}  // namespace qcert
