#pragma once

#include "qcert/interval.hpp"
#include "qcert/qtable.hpp"
#include "qcert/ring.hpp"

#include <vector>

namespace qcert {

// Certified upper bounds of the explicit error constants for one (N, s).
struct ErrorBudget {
  long N = 0;
  long s = 0;
  long n_min = 0;
  Dyadic er_n1;
  Dyadic er2;
  Dyadic er3;
  Dyadic er4;
  Dyadic er5;
  Dyadic er6;
  Dyadic a_s;
  Dyadic er_N;
};

// 1 for m = 1, else 4m log m - 3m log log m.
Interval N0(long m, int bits);

// Smallest integer n from which the expansion of q(n+s) to order N is certified.
long n_min(long N, long s, int bits);

ErrorBudget er_budget(long N, long s, int bits);

Interval nu(long n, int bits);
Interval M_of_n(long n, int bits);

enum class BesselSandwich { holds, fails, out_of_regime };
// Sandwich M(n)(1 - 4/nu^m) <= q(n) <= M(n)(1 + 4/nu^m) on conservative endpoints.
BesselSandwich bessel_sandwich_check(const QTable& t, long n, long m, int bits);

// e^{pi sqrt(n/3)} / (4 * 3^{1/4} * n^{3/4}).
Interval prefactor(long n, int bits);

enum class Side { lower, upper };

// Enclosure of prefactor(n) * L(n,s,N) or prefactor(n) * U(n,s,N).
// Throws DomainError when n < n_min(N, s).
Interval bound_value(long n, long s, long N, Side side, int bits);

// The truncated expansion as a polynomial in x = n^{-1/2}.
struct BoundPoly {
  long s = 0;
  long N = 0;
  Side side = Side::lower;
  std::vector<RingElem> coeffs;  // degrees 0..N
  Dyadic err;                    // degree N+1 coefficient, -Er for L and +Er for U
  Dyadic x_max;                  // n_min^{-1/2} rounded up
};

BoundPoly bound_poly(long s, long N, Side side, int bits);

// upper(prefactor * L) <= q(n+s) <= lower(prefactor * U), raising precision
// until the comparison is decided or the limit is reached.
bool sandwich_holds(const QTable& t, long n, long s, long N, int bits);

}  // namespace qcert
