#include "fixtures/oracle_values.hpp"
#include "qcert/elementary.hpp"
#include "qcert/error_budget.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qcert;
using support::dec;

namespace {

constexpr int kBits = 192;

Rat ceil_rat(const Rat& r) {
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rat(c);
}

}  // namespace

TEST_CASE("N0") {
  CHECK(N0(1, kBits) == Interval(1));
  Interval two = N0(2, kBits);
  CHECK(support::encloses(two, dec(oracle::kN0At2), support::ten_to(-38)));
  CHECK(two.width().to_rat() < support::ten_to(-40));
  // log log 2 < 0, so N0(2) exceeds 8 log 2.
  CHECK(two.lo() > iv_mul(Interval(8), enclose_log2(kBits), kBits).hi());
  Interval sixteen = N0(16, kBits);
  CHECK(support::encloses(sixteen, dec(oracle::kN0At16), support::ten_to(-36)));
  CHECK(sixteen.width().to_rat() < support::ten_to(-40));
  CHECK_THROWS_AS(N0(0, kBits), DomainError);
}

TEST_CASE("n_min examples") {
  CHECK(n_min(1, 0, kBits) == 206);
  long w14 = 0;
  for (long s = 0; s <= 4; ++s) {
    w14 = std::max(w14, n_min(14, s, kBits));
  }
  long w24 = 0;
  for (long s = 0; s <= 6; ++s) {
    w24 = std::max(w24, n_min(24, s, kBits));
  }
  CHECK(w14 <= 5019);
  CHECK(w24 <= 18502);
  CHECK_THROWS_AS(n_min(0, 0, kBits), DomainError);
}

TEST_CASE("n_min window consistency") {
  for (long N = 1; N <= 30; ++N) {
    for (long s = 0; s <= 6; ++s) {
      long n = n_min(N, s, kBits);
      CAPTURE(N);
      CAPTURE(s);
      CHECK(n >= 206);
      CHECK(Rat(n) >= ceil_rat(Rat(2 * (24 * s + 1), 3)));
    }
  }
  // The shift branch takes over for large s.
  CHECK(n_min(1, 20, kBits) == 321);
}

TEST_CASE("budget fields are positive") {
  ErrorBudget b = er_budget(14, 0, kBits);
  for (const Dyadic* d : {&b.er_n1, &b.er2, &b.er3, &b.er4, &b.er5, &b.er6, &b.a_s, &b.er_N}) {
    CHECK(d->sign() > 0);
  }
  CHECK(b.N == 14);
  CHECK(b.s == 0);
  CHECK(b.n_min == n_min(14, 0, kBits));
}

TEST_CASE("Er3 is (4/3) sigma^{(N+1)/2} rounded up") {
  for (long N = 1; N <= 25; N += 2) {  // N + 1 even: the value is rational
    for (long s = 0; s <= 6; ++s) {
      Rat sigma(24 * s + 1, 24);
      Rat exact = Rat(4, 3) * pow(sigma, (N + 1) / 2);
      Rat bound = er_budget(N, s, kBits).er3.to_rat();
      CHECK(bound >= exact);
      CHECK(bound - exact <= exact * support::ten_to(-50));
    }
  }
}

TEST_CASE("budget dominates the reference evaluation") {
  for (const auto& ref : oracle::kBudgets) {
    ErrorBudget b = er_budget(ref.N, ref.s, kBits);
    CAPTURE(ref.N);
    CAPTURE(ref.s);
    CHECK(b.n_min == ref.n_min);
    const Dyadic* fields[] = {&b.er_n1, &b.er2, &b.er3, &b.er4, &b.er5, &b.er6, &b.a_s, &b.er_N};
    for (std::size_t i = 0; i < 8; ++i) {
      CAPTURE(i);
      Rat reference = dec(ref.fields[i]);
      Rat ours = fields[i]->to_rat();
      CHECK(ours >= reference);
      // Upper bounds, but not loose ones.
      CHECK(ours <= reference * (1 + support::ten_to(-30)));
    }
  }
}

TEST_CASE("Er2 monotonicity in N") {
  // Er2(N+1)/Er2(N) = (N/(N+1))^{3/2} sigma^{1/2}, so Er2 falls exactly when N^3 sigma < (N+1)^3.
  // The decrease past sigma e^2 therefore holds for s <= 1 only; for s >= 2 Er2 grows from N = 4 on.
  for (long s = 0; s <= 6; ++s) {
    Rat sigma(24 * s + 1, 24);
    for (long N = 1; N < 30; ++N) {
      CAPTURE(s);
      CAPTURE(N);
      bool falls = Rat(N * N * N) * sigma < Rat((N + 1) * (N + 1) * (N + 1));
      CHECK((er_budget(N + 1, s, kBits).er2 < er_budget(N, s, kBits).er2) == falls);
      if (s <= 1 && Rat(N) > sigma * Rat(7389056, 1000000)) {  // e^2 < 7.389056
        CHECK(falls);
      }
    }
  }
  CHECK(er_budget(5, 2, kBits).er2 > er_budget(4, 2, kBits).er2);
}

TEST_CASE("nu and M") {
  CHECK(nu(206, kBits).lo() >= Dyadic(26));
  CHECK(nu(205, kBits).hi() < Dyadic(26));
  Interval pi = enclose_pi(kBits);
  Interval nu0 = iv_div(pi, iv_mul(Interval(6), enclose_sqrt(Interval(2), kBits), kBits), kBits);
  CHECK(support::overlaps(nu(0, kBits), nu0));
  Interval m = M_of_n(1000, kBits);
  CHECK(m.positive());
  CHECK(m.width().to_rat() < m.lo().to_rat() * support::ten_to(-40));
}

TEST_CASE("Bessel sandwich examples") {
  const QTable& t = support::table();
  CHECK(bessel_sandwich_check(t, 500, 2, kBits) == BesselSandwich::holds);
  CHECK(bessel_sandwich_check(t, 2000, 3, kBits) == BesselSandwich::holds);
  CHECK(bessel_sandwich_check(t, 10, 2, kBits) == BesselSandwich::out_of_regime);
}

TEST_CASE("bound values") {
  const QTable& t = support::table();
  auto sandwich = [&](long n, long s, long N) {
    Interval lo = bound_value(n, s, N, Side::lower, kBits);
    Interval hi = bound_value(n, s, N, Side::upper, kBits);
    Rat q(t[n + s]);
    return lo.hi().to_rat() <= q && q <= hi.lo().to_rat();
  };
  CHECK(sandwich(6000, 0, 14));
  CHECK(sandwich(19000, 6, 24));
  CHECK(bound_value(6000, 0, 14, Side::lower, kBits).hi() < bound_value(6000, 0, 14, Side::upper, kBits).lo());
  CHECK_THROWS_AS(bound_value(n_min(14, 0, kBits) - 1, 0, 14, Side::lower, kBits), DomainError);
}

TEST_CASE("bound polynomials") {
  for (long N : {1L, 14L, 24L}) {
    for (long s = 0; s <= 6; ++s) {
      BoundPoly L = bound_poly(s, N, Side::lower, kBits);
      BoundPoly U = bound_poly(s, N, Side::upper, kBits);
      CHECK(L.coeffs.size() == static_cast<std::size_t>(N + 1));
      CHECK(L.coeffs[0] == RingElem(1));
      CHECK(U.coeffs == L.coeffs);
      CHECK(U.err == er_budget(N, s, kBits).er_N);
      CHECK(L.err == -U.err);
      Interval x_min = enclose_pow_half(Interval(n_min(N, s, kBits)), -1, kBits);
      CHECK(L.x_max >= x_min.hi());
    }
  }
}

TEST_CASE("polynomial and direct evaluation agree") {
  BoundPoly L = bound_poly(0, 14, Side::lower, kBits);
  Interval x = enclose_pow_half(Interval(6000), -1, kBits);
  Interval acc(L.err);
  for (auto c = L.coeffs.rbegin(); c != L.coeffs.rend(); ++c) {
    acc = iv_add(iv_mul(acc, x, kBits), ring_eval(*c, kBits), kBits);
  }
  Interval scaled = iv_mul(acc, prefactor(6000, kBits), kBits);
  CHECK(support::overlaps(scaled, bound_value(6000, 0, 14, Side::lower, kBits)));
}

TEST_CASE("sandwich property on sampled n") {
  const QTable& t = support::table();
  for (long N : {1L, 6L, 14L, 24L}) {
    for (long s = 0; s <= 6; ++s) {
      long lo = n_min(N, s, kBits);
      long hi = support::kTableMax - s;
      std::vector<long> ns{lo, hi};
      while (ns.size() < 200) {
        ns.push_back(support::uniform(lo, hi));
      }
      long failures = 0;
      for (long n : ns) {
        failures += sandwich_holds(t, n, s, N, kBits) ? 0 : 1;
      }
      CAPTURE(N);
      CAPTURE(s);
      CHECK(failures == 0);
    }
  }
}
