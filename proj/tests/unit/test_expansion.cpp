#include "fixtures/oracle_values.hpp"
#include "qcert/elementary.hpp"
#include "qcert/error_budget.hpp"
#include "qcert/expansion.hpp"
#include "qcert/ring.hpp"
#include "support.hpp"

#include <doctest.h>

#include <thread>

using namespace qcert;
using support::dec;

namespace {

constexpr int kBits = 256;

Interval n_pow_half(long n, long k) { return enclose_pow_half(Interval(n), k, kBits); }

// sum_{k=0}^{N} c_k n^{-k/2}
template <class F>
Interval series(long n, long N, F coeff) {
  Interval sum(0);
  for (long k = 0; k <= N; ++k) {
    sum = iv_add(sum, iv_mul(coeff(k), n_pow_half(n, -k), kBits), kBits);
  }
  return sum;
}

// |value| <= er * n^{-(N+1)/2}, decided on the conservative side.
bool within(const Interval& value, const Dyadic& er, long n, long N) {
  Interval radius = iv_mul(Interval(er), n_pow_half(n, -(N + 1)), kBits);
  return value.mag() <= radius.lo();
}

RingElem random_ring() {
  RingElem r;
  long terms = support::uniform(0, 4);
  for (long i = 0; i < terms; ++i) {
    r += RingElem::monomial(support::random_rat(50, 12), static_cast<int>(support::uniform(-3, 3)),
                            static_cast<int>(support::uniform(0, 1)));
  }
  return r;
}

}  // namespace

TEST_SUITE("ring") {
  TEST_CASE("sqrt3 squares to 3 and pi powers cancel") {
    CHECK(RingElem::sqrt3() * RingElem::sqrt3() == RingElem(3));
    CHECK(RingElem::pi(2) * RingElem::pi(-2) == RingElem(1));
    CHECK(RingElem::monomial(Rat(1), 0, 2) == RingElem(3));
    CHECK((RingElem::pi() - RingElem::pi()).is_zero());
    CHECK(RingElem(0).is_zero());
    CHECK(RingElem(Rat(2, 3)).is_rational());
    CHECK_FALSE(RingElem::pi().is_rational());
  }

  TEST_CASE("string form") {
    CHECK(RingElem().to_string() == "0/1");
    CHECK(RingElem(Rat(-3, 8)).to_string() == "-3/8");
    RingElem e = RingElem::monomial(Rat(1, 144), 1, 1) - RingElem::monomial(Rat(3, 8), -1, 1);
    CHECK(e.to_string() == "-3/8 pi^-1 sqrt3^1 + 1/144 pi^1 sqrt3^1");
  }

  TEST_CASE("exact ring axioms on random elements") {
    for (int i = 0; i < 1000; ++i) {
      RingElem a = random_ring();
      RingElem b = random_ring();
      RingElem c = random_ring();
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a - a).is_zero());
      CHECK(a + (-a) == RingElem());
    }
  }

  TEST_CASE("evaluation") {
    CHECK(ring_eval(RingElem(1), 64).contains(Rat(1)));
    Interval v = ring_eval(RingElem::pi() * RingElem::sqrt3(), 160);
    CHECK(support::encloses(v, dec(oracle::kPiSqrt3), support::ten_to(-38)));
    CHECK(v.width().to_rat() < support::ten_to(-40));
    CHECK(ring_eval(Bhat_coeff(0, CoeffContext(0)), 64).contains(Rat(1)));
  }
}

TEST_SUITE("coefficients") {
  TEST_CASE("context") {
    CoeffContext ctx(3);
    CHECK(ctx.s == 3);
    CHECK(ctx.sigma == Rat(73, 24));
  }

  TEST_CASE("rising factorial and generalized binomial") {
    CHECK(rising_factorial(Rat(3, 2), 1) == Rat(3, 2));
    CHECK(rising_factorial(Rat(7, 5), 0) == 1);
    CHECK(rising_factorial(Rat(1, 2) - 2, 3) == Rat(3, 8));
    CHECK(gen_binomial(Rat(1, 2), 1) == Rat(1, 2));
    CHECK(gen_binomial(Rat(-3, 4), 1) == Rat(-3, 4));
    CHECK(gen_binomial(Rat(1, 2), 2) == Rat(-1, 8));
    CHECK(gen_binomial(Rat(10), 3) == 120);
    CHECK(gen_binomial(Rat(2), 5) == 0);
  }

  TEST_CASE("Bessel coefficients a_m(1)") {
    CHECK(a_coeff(0) == 1);
    CHECK(a_coeff(1) == Rat(3, 8));
    CHECK(a_coeff(2) == Rat(-15, 128));
  }

  TEST_CASE("a_m(1) reproduces the large-argument behaviour of I1") {
    // I1(x) ~ e^x / sqrt(2 pi x) * sum (-1)^m a_m(1) x^{-m}. The terms stop alternating after
    // m = 1, so the remainder carries the sign of the first omitted term and, for these x,
    // lies between one and two times its size.
    for (long x : {40, 80}) {
      Interval X(x);
      Interval pre = iv_div(enclose_exp(X, kBits),
                            enclose_sqrt(iv_mul(iv_mul(Interval(2), enclose_pi(kBits), kBits), X, kBits),
                                         kBits),
                            kBits);
      Interval sum(0);
      const long terms = 6;
      for (long m = 0; m < terms; ++m) {
        Rat t = a_coeff(m) / pow(Rat(x), m) * (m % 2 == 0 ? 1 : -1);
        sum = iv_add(sum, Interval::from_rat(t, kBits), kBits);
      }
      Rat next = a_coeff(terms) / pow(Rat(x), terms) * (terms % 2 == 0 ? 1 : -1);
      REQUIRE(next < 0);
      Interval ratio = iv_div(enclose_bessel_i1(X, kBits), pre, kBits);
      Interval remainder = iv_sub(ratio, sum, kBits);
      CAPTURE(x);
      CHECK(remainder.hi().to_rat() < next);
      CHECK(2 * next < remainder.lo().to_rat());
    }
  }

  TEST_CASE("binomial sum closed form: examples and domain") {
    CHECK(binomial_sum_rhs(0, 0) == 1);
    CHECK(binomial_sum_rhs(1, 1) == Rat(-1, 2));
    CHECK(binomial_sum_lhs(1, 1) == Rat(-1, 2));
    CHECK(binomial_sum_rhs(2, 3) == binomial_sum_lhs(2, 3));
    CHECK_THROWS_AS(binomial_sum_rhs(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(binomial_sum_rhs(0, -1), std::invalid_argument);
  }

  TEST_CASE("binomial sum identity for all 0 <= r < 2m <= 40") {
    for (long m = 1; 2 * m <= 40; ++m) {
      for (long r = 0; r < 2 * m; ++r) {
        CAPTURE(m);
        CAPTURE(r);
        CHECK(binomial_sum_lhs(r, m) == binomial_sum_rhs(r, m));
      }
    }
  }

  TEST_CASE("B_k(s)") {
    for (long s = 0; s <= 6; ++s) {
      CHECK(B_coeff(0, CoeffContext(s)) == RingElem(1));
    }
    CHECK(B_coeff(1, CoeffContext(0)) == RingElem::monomial(Rat(1, 144), 1, 1));
  }

  TEST_CASE("B_2(s) size bound") {
    // sqrt(pi/3) sigma^{3/2} / 2 * sinh(pi sqrt((24s+1)/72))
    for (long s = 0; s <= 6; ++s) {
      CoeffContext ctx(s);
      Interval pi = enclose_pi(kBits);
      Interval sigma = Interval::from_rat(ctx.sigma, kBits);
      Interval arg = iv_mul(pi, enclose_sqrt(Interval::from_rat(Rat(24 * s + 1, 72), kBits), kBits), kBits);
      Interval bound = iv_mul(iv_mul(enclose_sqrt(iv_div(pi, Interval(3), kBits), kBits),
                                     enclose_pow_half(sigma, 3, kBits), kBits),
                              iv_div(enclose_sinh(arg, kBits), Interval(2), kBits), kBits);
      Interval b2 = ring_eval(B_coeff(2, ctx), kBits);
      CAPTURE(s);
      CHECK(b2.mag() <= bound.lo());
    }
  }

  TEST_CASE("Abar") {
    for (long s = 0; s <= 6; ++s) {
      CHECK(Abar_coeff(0, CoeffContext(s)) == 1);
      CHECK(Abar_coeff(1, CoeffContext(s)) == 0);
      CHECK(Abar_coeff(7, CoeffContext(s)) == 0);
    }
    CHECK(Abar_coeff(2, CoeffContext(0)) == Rat(-1, 32));
  }

  TEST_CASE("Bbar") {
    for (long s = 0; s <= 6; ++s) {
      CoeffContext ctx(s);
      CHECK(Bbar_coeff(0, ctx) == RingElem(1));
      CHECK(Bbar_coeff(1, ctx) == B_coeff(1, ctx));
    }
    CoeffContext c0(0);
    CHECK(Bbar_coeff(2, c0) == B_coeff(2, c0) - RingElem(Rat(1, 32)));
  }

  TEST_CASE("Chat") {
    for (long s = 0; s <= 6; ++s) {
      CoeffContext ctx(s);
      CHECK(Chat_coeff(0, ctx) == RingElem(1));
      CHECK(Chat_coeff(1, ctx) == RingElem::monomial(Rat(-3, 8), -1, 1));
    }
    CHECK(Chat_coeff(2, CoeffContext(0)) == RingElem::monomial(Rat(-45, 128), -2, 0));
  }

  TEST_CASE("Bhat") {
    CoeffContext c0(0);
    for (long s = 0; s <= 6; ++s) {
      CHECK(Bhat_coeff(0, CoeffContext(s)) == RingElem(1));
    }
    RingElem b1 = Bhat_coeff(1, c0);
    CHECK(b1 == Bbar_coeff(1, c0) + Chat_coeff(1, c0));
    CHECK(b1 == RingElem::monomial(Rat(1, 144), 1, 1) - RingElem::monomial(Rat(3, 8), -1, 1));
    Interval v = ring_eval(b1, 128);
    CHECK(support::encloses(v, dec("-0.1689608"), support::ten_to(-7)));
    CHECK(v.width().to_rat() < support::ten_to(-30));
  }

  TEST_CASE("family lookup by name") {
    CHECK(coeff_by_name("Bhat", 1, 0) == Bhat_coeff(1, CoeffContext(0)));
    CHECK(coeff_by_name("a", 2, 0) == RingElem(Rat(-15, 128)));
    CHECK(coeff_by_name("Abar", 2, 0) == RingElem(Rat(-1, 32)));
    CHECK_THROWS_AS(coeff_by_name("Q", 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(coeff_by_name("B", -1, 0), std::invalid_argument);
  }

  TEST_CASE("values agree with the reference implementation") {
    for (const auto& ref : oracle::kCoefficients) {
      CAPTURE(ref.family);
      CAPTURE(ref.index);
      CAPTURE(ref.s);
      Interval v = ring_eval(coeff_by_name(ref.family, ref.index, ref.s), kBits);
      Rat x = dec(ref.value);
      Rat tol = abs(x) * support::ten_to(-37) + support::ten_to(-60);
      CHECK(support::overlaps(v, Interval(Dyadic::from_rat(x - tol, kBits, Round::Down),
                                          Dyadic::from_rat(x + tol, kBits, Round::Up))));
    }
    Interval b2 = ring_eval(B_coeff(2, CoeffContext(0)), kBits);
    CHECK(support::encloses(b2, dec(oracle::kB2At0), support::ten_to(-43)));
    CHECK(b2.width().to_rat() < support::ten_to(-50));
  }

  TEST_CASE("memo is consistent under concurrent use") {
    std::vector<std::vector<RingElem>> seen(4);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < seen.size(); ++t) {
      pool.emplace_back([&seen, t] {
        for (long m = 0; m <= 18; ++m) {
          seen[t].push_back(Bhat_coeff(m, CoeffContext(7 + static_cast<long>(t % 2))));
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
    CHECK(seen[0] == seen[2]);
    CHECK(seen[1] == seen[3]);
    CHECK(seen[0][5] == Bhat_coeff(5, CoeffContext(7)));
  }
}

TEST_SUITE("series consistency") {
  TEST_CASE("exponential factor against B_k and Er2") {
    for (long s = 0; s <= 4; ++s) {
      CoeffContext ctx(s);
      for (long N : {6, 14}) {
        Dyadic er2 = er_budget(N, s, kBits).er2;
        for (long n : {1000L, 10000L, 100000L}) {
          CAPTURE(s);
          CAPTURE(N);
          CAPTURE(n);
          // pi sqrt(n/3) (sqrt(1 + sigma/n) - 1), written to avoid cancellation.
          Interval u = Interval::from_rat(ctx.sigma / n, kBits);
          Interval root = enclose_sqrt(iv_add(Interval(1), u, kBits), kBits);
          Interval delta = iv_div(u, iv_add(root, Interval(1), kBits), kBits);
          Interval arg = iv_mul(iv_mul(enclose_pi(kBits),
                                       enclose_sqrt(Interval::from_rat(Rat(n) / 3, kBits), kBits), kBits),
                                delta, kBits);
          Interval exact = enclose_exp(arg, kBits);
          Interval approx = series(n, N, [&](long k) { return ring_eval(B_coeff(k, ctx), kBits); });
          CHECK(within(iv_sub(exact, approx, kBits), er2, n, N));
        }
      }
    }
  }

  TEST_CASE("binomial factor against Abar and Er3") {
    for (long s = 0; s <= 4; ++s) {
      CoeffContext ctx(s);
      for (long N : {6, 14}) {
        Dyadic er3 = er_budget(N, s, kBits).er3;
        for (long n : {1000L, 10000L, 100000L}) {
          CAPTURE(s);
          CAPTURE(N);
          CAPTURE(n);
          Interval base = Interval::from_rat(1 + ctx.sigma / n, kBits);
          Interval exact = enclose_pow(base, Rat(-3, 4), kBits);
          Interval approx =
              series(n, N, [&](long k) { return Interval::from_rat(Abar_coeff(k, ctx), kBits); });
          CHECK(within(iv_sub(exact, approx, kBits), er3, n, N));
        }
      }
    }
  }

  TEST_CASE("full product against Bhat and Er_N with exact q") {
    // The q table ends at 20000, so n = 10^5 from the series grid is replaced by
    // the window start and the last n the table covers.
    const QTable& t = support::table();
    for (long s = 0; s <= 4; ++s) {
      CoeffContext ctx(s);
      for (long N : {6, 14}) {
        long first = n_min(N, s, kBits);
        Dyadic erN = er_budget(N, s, kBits).er_N;
        for (long n : {1000L, 10000L, first, support::kTableMax - s}) {
          if (n < first) {
            continue;
          }
          CAPTURE(s);
          CAPTURE(N);
          CAPTURE(n);
          Interval scaled = iv_div(Interval::from_bigint(t[n + s], kBits), prefactor(n, kBits), kBits);
          Interval approx =
              series(n, N, [&](long k) { return ring_eval(Bhat_coeff(k, ctx), kBits); });
          CHECK(within(iv_sub(scaled, approx, kBits), erN, n, N));
        }
      }
    }
  }
}
