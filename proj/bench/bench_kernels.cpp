// Serial reference vs OpenMP kernels.

#include "cvar/enumeration.hpp"
#include "cvar/fit.hpp"
#include "cvar/geometry.hpp"
#include "cvar/implicitization.hpp"

#include <benchmark/benchmark.h>

using namespace cvar;

namespace {

const CausalModel& thick_fan() {
  static const CausalModel m = parse_model("n=3; A = u*v; B = u ^ v ^ w");
  return m;
}

Execution mode(const benchmark::State& s) {
  return s.range(0) ? Execution::parallel : Execution::serial;
}

void BM_SampleCloud(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample_cloud(thick_fan(), 4096, 1, mode(state)));
  state.SetItemsProcessed(state.iterations() * 4096);
}

void BM_FitBatch(benchmark::State& state) {
  std::vector<JointDistD> targets;
  for (const auto& p : sample_cloud(thick_fan(), 64, 2)) targets.push_back(to_double(p));
  for (auto _ : state) benchmark::DoNotOptimize(fit_batch(thick_fan(), targets, {}, mode(state)));
  state.SetItemsProcessed(state.iterations() * std::int64_t(targets.size()));
}

void BM_Necessity(benchmark::State& state) {
  FeasibilityTest t;
  t.conditions.push_back(parse_condition("p11*p00 > p10*p01"));
  auto m = parse_model("n=3; A = u*v; B = u*w");
  CertifyOptions o;
  o.samples = 2000;
  o.grid_denominator = 0;
  o.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(certify_test(m, t, o));
  state.SetItemsProcessed(state.iterations() * 2000);
}

void BM_EnumerateN3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_models(3));
}

}  // namespace

BENCHMARK(BM_SampleCloud)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_FitBatch)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Necessity)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateN3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
