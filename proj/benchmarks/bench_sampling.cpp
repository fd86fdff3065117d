#include <benchmark/benchmark.h>

#include "thermo/gibbs.hpp"
#include "thermo/local_pressure.hpp"
#include "thermo/pressure.hpp"

namespace {

const thermo::LocallyConstantPotential kSame(2, 2, {1.0, 0.0, 0.0, 1.0});

thermo::MarkovMeasure chain() {
  return thermo::MarkovMeasure::from_stochastic(thermo::SubshiftOfFiniteType::full_shift(2),
                                                thermo::Matrix::from_rows({{0, 1}, {.5, .5}}));
}

void BM_Sample(benchmark::State& state) {
  const auto mu = chain();
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(thermo::sample(mu, 1000, 407, 1, threads).points.size());
  state.SetItemsProcessed(state.iterations() * 1000 * 407);
}
BENCHMARK(BM_Sample)->Arg(1)->Arg(4)->UseRealTime();

void BM_BatchLocalPressure(benchmark::State& state) {
  const auto mu = chain();
  const auto threads = static_cast<unsigned>(state.range(0));
  const auto batch = thermo::sample(mu, 1000, 407, 1, threads);
  const std::vector<std::size_t> ns{25, 50, 100, 200, 400};
  const std::vector<std::size_t> ks{0, 2, 4, 6};
  const auto grid = thermo::make_grid(ns, ks);
  for (auto _ : state) benchmark::DoNotOptimize(thermo::verify_theorem_a(mu, kSame, batch, grid, threads).sample_mean);
}
BENCHMARK(BM_BatchLocalPressure)->Arg(1)->Arg(4)->UseRealTime();

void BM_GibbsDiagnose(benchmark::State& state) {
  const auto mu = chain();
  const auto batch = thermo::sample(mu, 200, 407, 1);
  thermo::GibbsOptions options;
  for (std::size_t n = 25; n <= 400; n += 25) options.n_grid.push_back(n);
  options.k = 6;
  const double p = thermo::topological_pressure(mu.shift_space(), kSame).value;
  for (auto _ : state) benchmark::DoNotOptimize(thermo::gibbs_diagnose(mu, kSame, p, batch, options).max_log_delta);
}
BENCHMARK(BM_GibbsDiagnose);

}  // namespace
