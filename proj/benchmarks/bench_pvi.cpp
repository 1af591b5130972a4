#include <benchmark/benchmark.h>

#include "pvi/fuchs.hpp"
#include "pvi/painleve6.hpp"
#include "pvi/recursion.hpp"

using namespace pvi;

namespace {

const FamilySpec kExotic{FamilyKind::exotic_generic, 1};
const FamilySpec kComplicated{FamilyKind::complicated_generic, 0};

PVIParams ones() { return {GaussianRational(1), GaussianRational(1), GaussianRational(1), GaussianRational(1)}; }
PVIParams complicated_params() { return {GaussianRational(1), GaussianRational(1), GaussianRational(2), GaussianRational(1)}; }

void BM_ExpandExotic(benchmark::State& st) {
  const int K = static_cast<int>(st.range(0));
  const int J = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(expand(kExotic, ones(), K, J));
}
BENCHMARK(BM_ExpandExotic)->Args({1, 16})->Args({2, 16})->Args({4, 24})->Unit(benchmark::kMillisecond);

void BM_ExpandComplicated(benchmark::State& st) {
  const int K = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(expand(kComplicated, complicated_params(), K, 16));
}
BENCHMARK(BM_ExpandComplicated)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Rationality(benchmark::State& st) {
  const ExpansionState s = expand(kExotic, ones(), 4, 24);
  for (auto _ : st) benchmark::DoNotOptimize(rationality_certificates(s, 12));
}
BENCHMARK(BM_Rationality)->Unit(benchmark::kMillisecond);

void BM_NormalizeAndClassify(benchmark::State& st) {
  ExpansionState s = prepare_state(kExotic, ones(), 1, 24);
  s.coefficients.push_back(expand_to(s.phi0, 32));
  CoefficientEquation eq = build_linear_operator_k(s, 1);
  eq.rhs = compute_rhs_k(s, 1);
  const RationalFunction rhs = exact_rhs_k(s, {}, 1);
  const auto hints = singular_point_hints(kExotic, ones());
  for (auto _ : st) {
    const LinearOperator op = normalize_operator(eq, rhs);
    benchmark::DoNotOptimize(local_shape_report(op, hints));
  }
}
BENCHMARK(BM_NormalizeAndClassify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
