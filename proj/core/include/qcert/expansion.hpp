#pragma once

#include "qcert/bigint.hpp"
#include "qcert/ring.hpp"

#include <string>
#include <vector>

namespace qcert {

// Shift s together with sigma = (24s + 1) / 24.
struct CoeffContext {
  explicit CoeffContext(long shift);
  long s;
  Rat sigma;
};

// x (x+1) ... (x+m-1).
Rat rising_factorial(const Rat& x, long m);
// x (x-1) ... (x-m+1) / m!.
Rat gen_binomial(const Rat& x, long m);

// a_m(1) of the Bessel asymptotic series.
Rat a_coeff(long m);

// Closed form of sum_s (-1)^s C(r,s) C(s/2,m); requires r < 2m or r = m = 0.
Rat binomial_sum_rhs(long r, long m);
// The same sum evaluated term by term.
Rat binomial_sum_lhs(long r, long m);

// Coefficient families of the expansion. Memoized; safe to call concurrently.
RingElem B_coeff(long k, const CoeffContext& ctx);
Rat Abar_coeff(long l, const CoeffContext& ctx);
RingElem Bbar_coeff(long k, const CoeffContext& ctx);
RingElem Chat_coeff(long m, const CoeffContext& ctx);
RingElem Bhat_coeff(long m, const CoeffContext& ctx);

// Family name ("B", "Abar", "Bbar", "Chat", "Bhat", "a") to exact element.
RingElem coeff_by_name(const std::string& family, long index, long s);

}  // namespace qcert
