#include <benchmark/benchmark.h>

#include "selfish/analytic.hpp"
#include "selfish/markov_oracle.hpp"
#include "selfish/sim.hpp"

namespace {

void BM_SimulateAggregate(benchmark::State& state) {
  selfish::SimConfig c;
  c.alpha = 0.35;
  c.gamma = 0.5;
  c.num_events = static_cast<std::uint64_t>(state.range(0));
  c.track_occupancy = false;
  for (auto _ : state) {
    auto r = selfish::run(c);
    benchmark::DoNotOptimize(r.relative_revenue);
    ++c.seed;
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateAggregate)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

void BM_SimulatePerMiner(benchmark::State& state) {
  selfish::SimConfig c;
  c.alpha = 0.35;
  c.gamma = 0.5;
  c.num_events = 10'000;
  c.granularity = selfish::PerMiner{static_cast<std::uint32_t>(state.range(0))};
  c.track_occupancy = false;
  for (auto _ : state) {
    auto r = selfish::run(c);
    benchmark::DoNotOptimize(r.relative_revenue);
  }
  state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_SimulatePerMiner)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_OracleSolve(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 100.0;
  const selfish::ModelParams p{alpha, 0.5};
  const auto chain = selfish::oracle::build_chain(p, selfish::oracle::auto_k_max(alpha));
  for (auto _ : state) {
    auto d = selfish::oracle::stationary(chain);
    benchmark::DoNotOptimize(d.p0);
  }
  state.counters["states"] = static_cast<double>(chain.num_states());
}
BENCHMARK(BM_OracleSolve)->Arg(10)->Arg(33)->Arg(45)->Arg(49);

void BM_ClosedForm(benchmark::State& state) {
  double a = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(selfish::relative_revenue({a, 0.5}));
    a = a < 0.48 ? a + 0.001 : 0.01;
  }
}
BENCHMARK(BM_ClosedForm);

}  // namespace

BENCHMARK_MAIN();
