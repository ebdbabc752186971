#include <benchmark/benchmark.h>

#include "apnforge/cubic.hpp"
#include "apnforge/weil.hpp"

namespace apnforge {
namespace {

Field field_for(std::uint64_t q) {
  const auto pn = odd_prime_power(q);
  return Field::build(pn->first, pn->second);
}

WeilParams params(const Field& F) { return {0, F.n() > 1 ? 1u : 0u, F.generator(), 1, -1, F.one()}; }

void BM_WeilRow(benchmark::State& state) {
  const Field F = field_for(state.range(0));
  const auto w = params(F);
  for (auto _ : state) benchmark::DoNotOptimize(ddt_row_weil(F, w));
}
BENCHMARK(BM_WeilRow)->Arg(49)->Arg(243)->Arg(343)->Unit(benchmark::kMillisecond);

void BM_CaseEquationRow(benchmark::State& state) {
  const Field F = field_for(state.range(0));
  const auto w = params(F);
  for (auto _ : state) benchmark::DoNotOptimize(case_equation_row(F, w));
}
BENCHMARK(BM_CaseEquationRow)->Arg(49)->Arg(243)->Arg(343)->Unit(benchmark::kMillisecond);

void BM_SquaredSumIdentity(benchmark::State& state) {
  const Field F = field_for(state.range(0));
  const auto w = params(F);
  for (auto _ : state) benchmark::DoNotOptimize(s_alpha_sq_identity(F, w, F.generator()));
}
BENCHMARK(BM_SquaredSumIdentity)->Arg(81)->Arg(343)->Unit(benchmark::kMicrosecond);

void BM_SolveCubic(benchmark::State& state) {
  const Field F = field_for(state.range(0));
  std::uint32_t i = 0;
  for (auto _ : state) {
    const MonicCubic g{F.element(i % F.q()), F.element((i * 7 + 1) % F.q()), F.element((i * 13 + 5) % F.q())};
    benchmark::DoNotOptimize(solve_cubic(F, g));
    ++i;
  }
}
BENCHMARK(BM_SolveCubic)->Arg(49)->Arg(343)->Arg(9973);

}  // namespace
}  // namespace apnforge

BENCHMARK_MAIN();
