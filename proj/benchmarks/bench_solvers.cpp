#include <benchmark/benchmark.h>

#include "sgas/dynamics.hpp"
#include "sgas/fredholm.hpp"
#include "sgas/nsoliton.hpp"
#include "sgas/outer_model.hpp"
#include "sgas/specfun.hpp"

using namespace sgas;

namespace {
Scenario standard() {
  Scenario s;
  s.soliton = make_trial_soliton(2.0, -200.0, 1);
  return s;
}
}  // namespace

static void BM_CompleteElliptic(benchmark::State& st) {
  double m = 0.3;
  for (auto _ : st) {
    benchmark::DoNotOptimize(specfun::complete_elliptic(m));
    m = m < 0.9 ? m + 1e-6 : 0.3;
  }
}
BENCHMARK(BM_CompleteElliptic);

static void BM_Theta3(benchmark::State& st) {
  const std::complex<double> tau(0.0, 0.7), z(0.3, 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(specfun::theta3(z, tau));
}
BENCHMARK(BM_Theta3);

static void BM_QExact(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  SolitonSet s = sample_gas_solitons(n, GasSpec{});
  for (auto _ : st) benchmark::DoNotOptimize(q_exact(s, 3.0, 1.0));
  st.SetComplexityN(n);
}
BENCHMARK(BM_QExact)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

static void BM_QGas(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  Scenario s;
  for (auto _ : st) benchmark::DoNotOptimize(q_gas(s, 3.0, 1.0, n));
}
BENCHMARK(BM_QGas)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

// Large weights push the determinant into multiprecision.
static void BM_QGasMultiprecision(benchmark::State& st) {
  Scenario s;
  for (auto _ : st) benchmark::DoNotOptimize(q_gas(s, 60.0, 20.0, 80));
}
BENCHMARK(BM_QGasMultiprecision)->Unit(benchmark::kMillisecond);

static void BM_PhaseState(benchmark::State& st) {
  Scenario s = standard();
  for (auto _ : st) benchmark::DoNotOptimize(phase_state(s, 60.0, 20.0));
}
BENCHMARK(BM_PhaseState)->Unit(benchmark::kMicrosecond);

static void BM_QAsymptotic(benchmark::State& st) {
  Scenario s = standard();
  for (auto _ : st) benchmark::DoNotOptimize(q_asymptotic(s, 60.0, 20.0));
}
BENCHMARK(BM_QAsymptotic)->Unit(benchmark::kMicrosecond);

static void BM_SolvePeak(benchmark::State& st) {
  Scenario s = standard();
  const double t = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(solve_peak(t, s));
}
BENCHMARK(BM_SolvePeak)->Arg(16)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_PhaseShift(benchmark::State& st) {
  BandParams b = make_band(0.25, 0.8);
  for (auto _ : st) benchmark::DoNotOptimize(phase_shift(2.0, b));
}
BENCHMARK(BM_PhaseShift)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
