#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "thermo/pressure.hpp"

namespace {

thermo::LocallyConstantPotential random_potential(std::size_t m, std::size_t r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<double> table(static_cast<std::size_t>(std::pow(m, r)));
  for (double& v : table) v = value(rng);
  return {m, r, std::move(table)};
}

void BM_TopologicalPressure(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto sft = thermo::SubshiftOfFiniteType::full_shift(m);
  const auto phi = random_potential(m, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(thermo::topological_pressure(sft, phi).value);
}
BENCHMARK(BM_TopologicalPressure)->RangeMultiplier(2)->Range(2, 32);

void BM_PressureWithRecoding(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  const auto sft = thermo::SubshiftOfFiniteType::full_shift(2);
  const auto phi = random_potential(2, r, 2);
  for (auto _ : state) benchmark::DoNotOptimize(thermo::topological_pressure(sft, phi).value);
}
BENCHMARK(BM_PressureWithRecoding)->DenseRange(3, 9, 2);

void BM_PartitionOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sft = thermo::SubshiftOfFiniteType::golden_mean();
  const auto phi = random_potential(2, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(thermo::partition_function_oracle(sft, phi, n));
}
BENCHMARK(BM_PartitionOracle)->DenseRange(8, 24, 8);

void BM_EquilibriumMeasure(benchmark::State& state) {
  const auto sft = thermo::SubshiftOfFiniteType::full_shift(static_cast<std::size_t>(state.range(0)));
  const auto phi = random_potential(sft.alphabet_size(), 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(thermo::equilibrium_measure(sft, phi).fingerprint());
}
BENCHMARK(BM_EquilibriumMeasure)->Arg(2)->Arg(8)->Arg(32);

}  // namespace
