#include "qcert/theorems.hpp"

#include "qcert/elementary.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace qcert {

BigInt invariant_A(const BigInt& a0, const BigInt& a1, const BigInt& a2, const BigInt& a3,
                   const BigInt& a4) {
  return a0 * a4 - 4 * a1 * a3 + 3 * a2 * a2;
}

BigInt invariant_B(const BigInt& a0, const BigInt& a1, const BigInt& a2, const BigInt& a3,
                   const BigInt& a4) {
  return -a0 * a2 * a4 + a2 * a2 * a2 + a0 * a3 * a3 + a1 * a1 * a4 - 2 * a1 * a2 * a3;
}

BigInt invariant_I(const BigInt& a0, const BigInt& a1, const BigInt& a2, const BigInt& a3,
                   const BigInt& a4) {
  BigInt a = invariant_A(a0, a1, a2, a3, a4);
  BigInt b = invariant_B(a0, a1, a2, a3, a4);
  return a * a * a - 27 * b * b;
}

Rat laguerre(long m, const QTable& t, long n) {
  if (m < 0 || n < 0) {
    throw std::invalid_argument("laguerre requires m >= 0 and n >= 0");
  }
  if (n + 2 * m > t.n_max()) {
    throw TableRangeError("laguerre(" + std::to_string(m) + ", n=" + std::to_string(n) +
                          ") needs q up to " + std::to_string(n + 2 * m));
  }
  BigInt sum = 0;
  for (long k = 0; k <= 2 * m; ++k) {
    BigInt term = binomial(static_cast<unsigned long>(2 * m), static_cast<unsigned long>(k)) *
                  t[n + k] * t[n + 2 * m - k];
    if ((k + m) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  Rat r(sum, BigInt(2));
  r.canonicalize();
  return r;
}

namespace {

RingElem kappa(TheoremId id) {
  switch (id) {
    case TheoremId::A_companion:
      return RingElem::monomial(make_rat(1, 32), 2, 0);  // pi^2 / 32
    case TheoremId::B_companion:
      return RingElem::monomial(make_rat(1, 864), 3, 1);  // pi^3 / (288 sqrt3)
    case TheoremId::double_turan_companion:
      return RingElem::monomial(make_rat(1, 6), 1, 1);  // pi / (2 sqrt3)
    case TheoremId::laguerre3_companion:
      return RingElem::monomial(make_rat(5, 768), 3, 1);  // 5 pi^3 / (256 sqrt3)
    default:
      return RingElem();
  }
}

Form L(long s) { return Form::L(s); }
Form U(long s) { return Form::U(s); }
Form X(int k) { return Form::X(k); }

// Companion factor in x after the minorant of the shifted denominator.
Form companion_factor(TheoremId id) {
  Form k(kappa(id));
  switch (id) {
    case TheoremId::A_companion:
      return Form(1) + k * X(6) - X(7);
    case TheoremId::B_companion:
      return Form(1) + k * X(9) - Form(RingElem(make_rat(1, 4))) * X(10);
    case TheoremId::double_turan_companion:
      return Form(1) + k * X(3) - X(4);
    case TheoremId::laguerre3_companion:
      return Form(1) + k * X(9);
    default:
      return Form(1);
  }
}

struct Companion {
  BigInt D;
  BigInt P;
  long n_c;
  long twice_e;
};

// D + kappa * P * n_c^{-e} > 0, deciding through enclosures when D <= 0.
bool companion_positive(TheoremId id, const Companion& c) {
  if (c.D > 0 && c.P >= 0) {
    return true;
  }
  if (c.D < 0 && c.P <= 0) {
    return false;
  }
  RingElem k = kappa(id);
  long bitlen = static_cast<long>(
      std::max(mpz_sizeinbase(c.D.get_mpz_t(), 2), mpz_sizeinbase(c.P.get_mpz_t(), 2)));
  // A coarse precision ladder keeps the pi cache small.
  int bits = static_cast<int>(((bitlen + 64) / 256 + 1) * 256);
  for (; bits <= (1 << 16); bits *= 2) {
    PrecisionGuard guard(bits);
    Interval v = Interval::from_bigint(c.D, bits) +
                 ring_eval(k, bits) * Interval::from_bigint(c.P, bits) *
                     enclose_pow_half(Interval(c.n_c), -c.twice_e, bits);
    if (v.positive()) {
      return true;
    }
    if (v.hi().sign() <= 0) {
      return false;
    }
  }
  throw DomainError("companion comparison undecided at maximum precision");
}

}  // namespace

const std::vector<TheoremSpec>& theorem_specs() {
  static const std::vector<TheoremSpec> specs = {
      {TheoremId::A, "A", "ineq1", 230, 1, 14, 4, 2469, 5018, ""},
      {TheoremId::A_companion, "A-companion", "ineq2", 279, 1, 14, 4, 5885, 5884,
       "pi^2/32 x^6 - x^7"},
      {TheoremId::B, "B", "ineq3", 272, 1, 24, 4, 9800, 18501, ""},
      {TheoremId::B_companion, "B-companion", "ineq4", 309, 1, 24, 4, 18225, 18501,
       "pi^3/(288 sqrt3) x^9 - x^10/4"},
      {TheoremId::double_turan, "double-turan", "ineq5", 273, 2, 14, 4, 3153, 5018, ""},
      {TheoremId::double_turan_companion, "double-turan-companion", "ineq6", 346, 2, 14, 4, 7056,
       7055, "pi/(2 sqrt3) x^3 - x^4"},
      {TheoremId::laguerre3, "laguerre3", "ineq-L3", 651, 0, 24, 6, 12884, 18501, ""},
      {TheoremId::laguerre3_companion, "laguerre3-companion", "ineq-c-L3", 715, 0, 24, 6, 17880,
       18501, "5 pi^3/(256 sqrt3) x^9"},
  };
  return specs;
}

const TheoremSpec& theorem_by_id(const std::string& id) {
  for (const auto& s : theorem_specs()) {
    if (s.id == id) {
      return s;
    }
  }
  throw std::invalid_argument("unknown theorem id '" + id + "'");
}

const TheoremSpec& theorem_by_ineq(const std::string& ineq_id) {
  for (const auto& s : theorem_specs()) {
    if (s.ineq_id == ineq_id) {
      return s;
    }
  }
  throw std::invalid_argument("unknown inequality id '" + ineq_id + "'");
}

Form ineq_form(const TheoremSpec& spec) {
  switch (spec.tid) {
    case TheoremId::A:
      return L(0) * L(4) + Form(3) * L(2) * L(2) - Form(4) * U(1) * U(3);
    case TheoremId::A_companion:
      return Form(4) * companion_factor(spec.tid) * L(1) * L(3) - U(0) * U(4) -
             Form(3) * U(2) * U(2);
    case TheoremId::B:
      return L(2) * L(2) * L(2) + L(0) * L(3) * L(3) + L(1) * L(1) * L(4) -
             U(0) * U(2) * U(4) - Form(2) * U(1) * U(2) * U(3);
    case TheoremId::B_companion:
      return companion_factor(spec.tid) * (L(0) * L(2) * L(4) + Form(2) * L(1) * L(2) * L(3)) -
             (U(2) * U(2) * U(2) + U(0) * U(3) * U(3) + U(1) * U(1) * U(4));
    case TheoremId::double_turan: {
      Form mid = L(2) * L(2) - U(1) * U(3);
      return mid * mid - (U(1) * U(1) - L(0) * L(2)) * (U(3) * U(3) - L(2) * L(4));
    }
    case TheoremId::double_turan_companion: {
      Form mid = U(2) * U(2) - L(1) * L(3);
      return companion_factor(spec.tid) * (L(1) * L(1) - U(0) * U(2)) *
                 (L(3) * L(3) - U(2) * U(4)) -
             mid * mid;
    }
    case TheoremId::laguerre3:
      return Form(10) * L(3) * L(3) + Form(6) * L(1) * L(5) - Form(15) * U(2) * U(4) -
             U(0) * U(6);
    case TheoremId::laguerre3_companion:
      return companion_factor(spec.tid) * (Form(15) * L(2) * L(4) + L(0) * L(6)) -
             Form(10) * U(3) * U(3) - Form(6) * U(1) * U(5);
  }
  throw std::logic_error("unhandled theorem id");
}

std::vector<std::pair<std::string, Form>> side_forms(const TheoremSpec& spec) {
  std::vector<std::pair<std::string, Form>> out;
  for (long s = 0; s <= spec.s_max; ++s) {
    out.emplace_back("L" + std::to_string(s), L(s));
  }
  Form k(kappa(spec.tid));
  switch (spec.tid) {
    case TheoremId::A_companion:
      out.emplace_back("companion factor", companion_factor(spec.tid));
      out.emplace_back("minorant 1-3kx", Form(1) - Form(3) * k * X(1));
      break;
    case TheoremId::B_companion:
      out.emplace_back("companion factor", companion_factor(spec.tid));
      out.emplace_back("minorant 1-18kx", Form(1) - Form(18) * k * X(1));
      break;
    case TheoremId::double_turan:
      out.emplace_back("L2^2-U1U3", L(2) * L(2) - U(1) * U(3));
      break;
    case TheoremId::double_turan_companion:
      out.emplace_back("L1^2-U0U2", L(1) * L(1) - U(0) * U(2));
      out.emplace_back("L3^2-U2U4", L(3) * L(3) - U(2) * U(4));
      out.emplace_back("companion factor", companion_factor(spec.tid));
      out.emplace_back("minorant 1-(3/2)kx",
                       Form(1) - Form(RingElem(make_rat(3, 2))) * k * X(1));
      break;
    case TheoremId::laguerre3_companion:
      out.emplace_back("companion factor", companion_factor(spec.tid));
      break;
    default:
      break;
  }
  return out;
}

IneqPoly build_ineq(const TheoremSpec& spec, int bits) {
  return IneqPoly(spec.ineq_id, ineq_form(spec), spec.N_used, bits);
}

std::vector<IneqPoly> build_side(const TheoremSpec& spec, int bits) {
  std::vector<IneqPoly> out;
  for (auto& [name, form] : side_forms(spec)) {
    out.emplace_back(spec.ineq_id + ": " + name, form, spec.N_used, bits);
  }
  return out;
}

long first_index(const TheoremSpec& spec) {
  switch (spec.tid) {
    case TheoremId::double_turan:
    case TheoremId::double_turan_companion:
      return 2;
    case TheoremId::laguerre3:
      return 0;
    default:
      return 1;
  }
}

namespace {

Companion dtc_parts(const QTable& t, long n, long n_c) {
  BigInt d = t.at(n) * t.at(n) - t.at(n - 1) * t.at(n + 1);
  BigInt dm = t.at(n - 1) * t.at(n - 1) - t.at(n - 2) * t.at(n);
  BigInt dp = t.at(n + 1) * t.at(n + 1) - t.at(n) * t.at(n + 2);
  BigInt p = dm * dp;
  return Companion{p - d * d, p, n_c, 3};
}

}  // namespace

bool exact_holds(const TheoremSpec& spec, const QTable& t, long n) {
  if (n < first_index(spec)) {
    throw std::invalid_argument("index below the domain of " + spec.id);
  }
  auto q = [&](long k) -> const BigInt& { return t.at(k); };
  switch (spec.tid) {
    case TheoremId::A:
      return invariant_A(q(n - 1), q(n), q(n + 1), q(n + 2), q(n + 3)) > 0;
    case TheoremId::A_companion: {
      BigInt p = 4 * q(n) * q(n + 2);
      BigInt d = p - q(n - 1) * q(n + 3) - 3 * q(n + 1) * q(n + 1);
      return companion_positive(spec.tid, Companion{d, p, n, 6});
    }
    case TheoremId::B:
      return invariant_B(q(n - 1), q(n), q(n + 1), q(n + 2), q(n + 3)) > 0;
    case TheoremId::B_companion: {
      BigInt p = 2 * q(n) * q(n + 1) * q(n + 2) + q(n - 1) * q(n + 1) * q(n + 3);
      BigInt r = q(n + 1) * q(n + 1) * q(n + 1) + q(n - 1) * q(n + 2) * q(n + 2) +
                 q(n) * q(n) * q(n + 3);
      return companion_positive(spec.tid, Companion{p - r, p, n, 9});
    }
    case TheoremId::double_turan: {
      BigInt d = q(n) * q(n) - q(n - 1) * q(n + 1);
      BigInt dm = q(n - 1) * q(n - 1) - q(n - 2) * q(n);
      BigInt dp = q(n + 1) * q(n + 1) - q(n) * q(n + 2);
      return d * d > dm * dp;
    }
    case TheoremId::double_turan_companion:
      // The proof establishes the factor at n - 1; see double_turan_companion_as_stated.
      return companion_positive(spec.tid, dtc_parts(t, n, n - 1));
    case TheoremId::laguerre3:
      return 10 * q(n + 3) * q(n + 3) + 6 * q(n + 1) * q(n + 5) >
             15 * q(n + 2) * q(n + 4) + q(n) * q(n + 6);
    case TheoremId::laguerre3_companion: {
      BigInt p = 15 * q(n + 2) * q(n + 4) + q(n) * q(n + 6);
      BigInt r = 10 * q(n + 3) * q(n + 3) + 6 * q(n + 1) * q(n + 5);
      return companion_positive(spec.tid, Companion{p - r, p, n, 9});
    }
  }
  throw std::logic_error("unhandled theorem id");
}

bool double_turan_companion_as_stated(const QTable& t, long n) {
  return companion_positive(TheoremId::double_turan_companion, dtc_parts(t, n, n));
}

RangeResult exact_verify(const TheoremSpec& spec, const QTable& t, long lo, long hi) {
  RangeResult r;
  r.lo = lo;
  r.hi = hi;
  for (long ns = lo; ns <= hi; ++ns) {
    if (!exact_holds(spec, t, ns + spec.shift)) {
      r.failures.push_back(ns);
    }
  }
  return r;
}

std::optional<long> sharpness_witness(const TheoremSpec& spec, const QTable& t) {
  for (long n = spec.threshold - 1; n >= first_index(spec); --n) {
    if (!exact_holds(spec, t, n)) {
      return n;
    }
  }
  return std::nullopt;
}

namespace {

long reach(const TheoremSpec& spec) {
  // Largest q offset relative to the shifted index.
  return spec.tid == TheoremId::laguerre3 || spec.tid == TheoremId::laguerre3_companion ? 6 : 4;
}

}  // namespace

VerificationReport verify_theorem(const TheoremSpec& spec, const QTable& t,
                                  const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.theorem = spec.id;
  rep.threshold = spec.threshold;
  rep.shift = spec.shift;

  int bits = opt.certify.bits;
  IneqPoly main = build_ineq(spec, bits);
  std::vector<IneqPoly> side = build_side(spec, bits);
  long window = main.window_max();
  if (t.n_max() < window + reach(spec)) {
    throw TableRangeError("q table ends at " + std::to_string(t.n_max()) + " but " + spec.id +
                          " needs at least " + std::to_string(window + reach(spec)));
  }

  Crossover cross = find_crossover(main, side, opt.certify);
  rep.n_star = cross.n_star;
  rep.window_max = cross.window_max;
  rep.within_window = cross.within_window;
  rep.precision_bits = cross.precision_bits;
  rep.subdivisions = cross.subdivisions;
  rep.exact.lo = spec.threshold - spec.shift;
  rep.exact.hi = rep.exact.lo - 1;

  auto finish = [&]() {
    rep.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  };

  if (cross.status != CertStatus::proved) {
    rep.status = "inconclusive";
    rep.stage = "certify";
    for (const auto& f : cross.failed) {
      rep.notes.push_back("not proved: " + f);
    }
    return finish();
  }
  if (!cross.within_window) {
    rep.notes.push_back("certified crossover " + std::to_string(cross.n_star) +
                        " lies beyond the window maximum " + std::to_string(cross.window_max) +
                        "; exact range extended to close the gap");
  }
  if (t.n_max() < cross.n_star - 1 + reach(spec)) {
    throw TableRangeError("q table ends at " + std::to_string(t.n_max()) + " but " + spec.id +
                          " needs q up to " + std::to_string(cross.n_star - 1 + reach(spec)));
  }

  rep.exact = exact_verify(spec, t, spec.threshold - spec.shift, cross.n_star - 1);
  if (opt.sharpness) {
    rep.sharpness_witness = sharpness_witness(spec, t);
  }
  if (spec.tid == TheoremId::double_turan_companion) {
    std::vector<long> stated;
    for (long n = spec.threshold; n <= cross.n_star - 1 + spec.shift; ++n) {
      if (!double_turan_companion_as_stated(t, n)) {
        stated.push_back(n);
      }
    }
    if (!stated.empty()) {
      rep.notes.push_back("with the factor taken at n instead of n-1 the inequality fails at n = " +
                          std::to_string(stated.back()));
    }
  }
  if (!rep.exact.failures.empty()) {
    rep.status = "fail";
    rep.stage = "exact";
    return finish();
  }
  rep.status = "pass";
  return finish();
}

}  // namespace qcert
