#include "qcert/certify.hpp"
#include "qcert/elementary.hpp"
#include "qcert/expansion.hpp"
#include "qcert/qtable.hpp"
#include "qcert/theorems.hpp"

#include <benchmark/benchmark.h>

using namespace qcert;

static void BM_QTableCompute(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(QTable::compute(state.range(0)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QTableCompute)->Arg(1000)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_EncloseExp(benchmark::State& state) {
  int bits = static_cast<int>(state.range(0));
  Interval x = Interval::from_rat(Rat(7, 3), bits);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enclose_exp(x, bits));
  }
}
BENCHMARK(BM_EncloseExp)->RangeMultiplier(2)->Range(64, 1024);

static void BM_EncloseBesselI1(benchmark::State& state) {
  int bits = static_cast<int>(state.range(0));
  Interval x(26);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enclose_bessel_i1(x, bits));
  }
}
BENCHMARK(BM_EncloseBesselI1)->Arg(128)->Arg(512);

// Ring multiplication dominates the coefficient convolutions.
static void BM_BhatProduct(benchmark::State& state) {
  RingElem a = Bhat_coeff(state.range(0), CoeffContext(3));
  RingElem b = Bhat_coeff(state.range(0), CoeffContext(4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_BhatProduct)->Arg(6)->Arg(14)->Arg(24);

static void BM_RingEvalBhat24(benchmark::State& state) {
  RingElem e = Bhat_coeff(24, CoeffContext(6));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ring_eval(e, 192));
  }
}
BENCHMARK(BM_RingEvalBhat24);

static void BM_CertifyIneq1(benchmark::State& state) {
  IneqPoly p = build_ineq(theorem_by_ineq("ineq1"), 192);
  Dyadic x0 = x_of_n(5019, 192);
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify_positive(p, x0, CertifyOptions{}));
  }
}
BENCHMARK(BM_CertifyIneq1)->Unit(benchmark::kMillisecond);

static void BM_BuildIneq3(benchmark::State& state) {
  const TheoremSpec& spec = theorem_by_ineq("ineq3");
  for (auto _ : state) {
    IneqPoly p = build_ineq(spec, 192);
    benchmark::DoNotOptimize(p.coefficients(192));
  }
}
BENCHMARK(BM_BuildIneq3)->Unit(benchmark::kMillisecond);

static void BM_ExactRangeA(benchmark::State& state) {
  static const QTable t = QTable::compute(5100);
  const TheoremSpec& spec = theorem_by_id("A");
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_verify(spec, t, 229, 5018));
  }
}
BENCHMARK(BM_ExactRangeA)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
