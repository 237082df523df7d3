#pragma once

#include "qcert/certify.hpp"
#include "qcert/form.hpp"
#include "qcert/qtable.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcert {

BigInt invariant_A(const BigInt& a0, const BigInt& a1, const BigInt& a2, const BigInt& a3,
                   const BigInt& a4);
BigInt invariant_B(const BigInt& a0, const BigInt& a1, const BigInt& a2, const BigInt& a3,
                   const BigInt& a4);
BigInt invariant_I(const BigInt& a0, const BigInt& a1, const BigInt& a2, const BigInt& a3,
                   const BigInt& a4);

// (1/2) sum_{k=0}^{2m} (-1)^{k+m} C(2m,k) q(n+k) q(n+2m-k).
Rat laguerre(long m, const QTable& t, long n);

enum class TheoremId {
  A,
  A_companion,
  B,
  B_companion,
  double_turan,
  double_turan_companion,
  laguerre3,
  laguerre3_companion,
};

struct TheoremSpec {
  TheoremId tid;
  std::string id;        // CLI name, e.g. "A-companion"
  std::string ineq_id;   // e.g. "ineq2"
  long threshold;        // stated: holds for n >= threshold
  long shift;            // the proof works with index n - shift
  long N_used;
  long s_max;            // shifts 0..s_max enter the bounds
  long crossover_published;  // the published positivity cutoff for the certified inequality
  long exact_hi_published;   // the published end of the finite check (shifted index)
  std::string perturbation;
};

const std::vector<TheoremSpec>& theorem_specs();
// Throws std::invalid_argument for unknown ids.
const TheoremSpec& theorem_by_id(const std::string& id);
const TheoremSpec& theorem_by_ineq(const std::string& ineq_id);

// The certified inequality in the shifted index, as a form in L_s, U_s and x.
Form ineq_form(const TheoremSpec& spec);
// Named side conditions the substitution of bounds relies on.
std::vector<std::pair<std::string, Form>> side_forms(const TheoremSpec& spec);

IneqPoly build_ineq(const TheoremSpec& spec, int bits);
std::vector<IneqPoly> build_side(const TheoremSpec& spec, int bits);

// The theorem's inequality at its own index n, decided exactly. Companion
// factors are compared through certified enclosures with rising precision.
bool exact_holds(const TheoremSpec& spec, const QTable& t, long n);
// The double-Turan companion as literally displayed, with the factor at n instead of n - 1.
bool double_turan_companion_as_stated(const QTable& t, long n);

// Smallest theorem index for which exact_holds is defined.
long first_index(const TheoremSpec& spec);

struct RangeResult {
  long lo = 0;  // shifted index
  long hi = -1;
  std::vector<long> failures;  // shifted index
};

// Checks shifted indices lo..hi.
RangeResult exact_verify(const TheoremSpec& spec, const QTable& t, long lo, long hi);

// Largest theorem index below the threshold where the inequality fails.
std::optional<long> sharpness_witness(const TheoremSpec& spec, const QTable& t);

struct VerificationReport {
  std::string theorem;
  long threshold = 0;
  long shift = 0;
  long n_star = 0;
  long window_max = 0;
  bool within_window = false;
  RangeResult exact;
  std::optional<long> sharpness_witness;
  std::string status;  // "pass", "fail" or "inconclusive"
  std::string stage;   // failing stage, empty on pass
  int precision_bits = 0;
  long subdivisions = 0;
  double seconds = 0.0;
  std::vector<std::string> notes;
};

struct VerifyOptions {
  CertifyOptions certify;
  bool sharpness = true;
};

// Throws TableRangeError when the table cannot cover the needed range.
VerificationReport verify_theorem(const TheoremSpec& spec, const QTable& t,
                                  const VerifyOptions& opt);

}  // namespace qcert
