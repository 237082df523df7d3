#pragma once

#include "qcert/form.hpp"

#include <string>
#include <vector>

namespace qcert {

enum class CertStatus { proved, inconclusive };

struct Certificate {
  CertStatus status = CertStatus::inconclusive;
  Dyadic x_star;             // positivity proved on (0, x_star]
  long n_star = 0;           // ceil(x_star^{-2})
  int leading_zero_degree = 0;
  long subdivisions = 0;
  bool max_depth_hit = false;
  bool negative_point = false;  // a certified negative value was found
  int precision_bits = 0;       // highest precision used
  std::string note;
};

struct CertifyOptions {
  int bits = 192;
  int max_bits = 1536;
  int max_depth = 60;
};

// Positivity of p on (0, x0]: strip exactly-zero leading coefficients, then
// bisect with interval Horner and mean-value enclosures. Never a false "proved".
Certificate certify_positive(const IneqPoly& p, const Dyadic& x0, const CertifyOptions& opt);

// ceil(x^{-2}).
long n_of_x(const Dyadic& x);
// Upper dyadic of n^{-1/2}.
Dyadic x_of_n(long n, int bits);

struct Crossover {
  CertStatus status = CertStatus::inconclusive;
  long n_star = 0;
  long window_max = 0;
  bool within_window = false;
  long subdivisions = 0;
  int precision_bits = 0;
  int leading_zero_degree = 0;
  std::vector<std::string> failed;  // names of polynomials not proved at the final n
};

// Searches the smallest n_star >= window max such that the main polynomial
// and every side condition are proved on (0, n_star^{-1/2}].
Crossover find_crossover(const IneqPoly& main, const std::vector<IneqPoly>& side,
                         const CertifyOptions& opt, long n_limit = 10'000'000);

}  // namespace qcert
