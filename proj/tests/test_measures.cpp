#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "thermo/error.hpp"
#include "thermo/measures.hpp"

namespace thermo {
namespace {

const auto kFull2 = SubshiftOfFiniteType::full_shift(2);
const auto kGolden = SubshiftOfFiniteType::golden_mean();

MarkovMeasure fair_coin() { return MarkovMeasure::bernoulli(kFull2, {0.5, 0.5}); }
// Q = [[0, 1], [.5, .5]]: the word 00 has zero mass.
MarkovMeasure chain() { return MarkovMeasure::from_stochastic(kFull2, Matrix::from_rows({{0, 1}, {.5, .5}})); }

TEST(StationaryVector, Symmetric) {
  const auto pi = stationary_vector(Matrix::from_rows({{.5, .5}, {.5, .5}}));
  EXPECT_NEAR(pi[0], 0.5, 1e-15);
  EXPECT_NEAR(pi[1], 0.5, 1e-15);
}

TEST(StationaryVector, NoDoubleZeroChainAgreesWithLazyIteration) {
  const std::vector<std::vector<double>> q{{0, 1}, {.5, .5}};
  const auto pi = stationary_vector(Matrix::from_rows(q));
  const auto reference = oracle::lazy_stationary(q);
  EXPECT_NEAR(pi[0], reference[0], 1e-12);
  EXPECT_NEAR(pi[1], reference[1], 1e-12);
  EXPECT_NEAR(pi[0], 0.5 * pi[1], 1e-15);
  EXPECT_NEAR(pi[0], 1.0 / 3.0, 1e-15);
}

TEST(StationaryVector, ReducibleMatrixNamesItsClasses) {
  try {
    stationary_vector(Matrix::from_rows({{1, 0}, {0, 1}}));
    FAIL() << "expected ReducibleError";
  } catch (const ReducibleError& e) {
    EXPECT_NE(std::string(e.what()).find("{0}, {1}"), std::string::npos) << e.what();
  }
}

TEST(StationaryVector, RandomChainsAgreeWithLazyIteration) {
  gen::Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sft = gen::primitive_sft(rng, 2, 5);
    const auto mu = gen::markov_measure(rng, sft);
    const auto reference = oracle::lazy_stationary(mu.stochastic().to_rows());
    EXPECT_LE(max_abs_difference(mu.stationary(), reference), 1e-10);
    EXPECT_LE(max_abs_difference(multiply(mu.stationary(), mu.stochastic()), mu.stationary()), 1e-12);
  }
}

TEST(MarkovMeasure, RejectsInvalidInputs) {
  EXPECT_THROW(MarkovMeasure::bernoulli(kFull2, {0.6, 0.6}), InvalidArgument);
  EXPECT_THROW(MarkovMeasure::bernoulli(kGolden, {0.5, 0.5}), InvalidArgument);  // charges 1 -> 1
  EXPECT_THROW(MarkovMeasure::create(kFull2, Matrix::from_rows({{.5, .5}, {.5, .5}}), {0.9, 0.1}), HypothesisError);
  EXPECT_THROW(MarkovMeasure::bernoulli(kFull2, {0.5, 0.5, 0.0}), InvalidArgument);
}

TEST(MarkovMeasure, DegenerateBernoulliIsAtomic) {
  EXPECT_THROW(MarkovMeasure::bernoulli(kFull2, {0.0, 1.0}), HypothesisError);
  // A single period-2 orbit.
  EXPECT_THROW(MarkovMeasure::create(kFull2, Matrix::from_rows({{0, 1}, {1, 0}}), {0.5, 0.5}), HypothesisError);
}

TEST(CylinderMeasure, Examples) {
  const auto coin = fair_coin();
  EXPECT_DOUBLE_EQ(cylinder_measure(coin, Word{0, 1}), 0.25);
  EXPECT_EQ(cylinder_measure(coin, Word{}), 1.0);
  const auto mc = chain();
  EXPECT_NEAR(cylinder_measure(mc, Word{0, 1, 1}), 1.0 / 6.0, 1e-15);
  EXPECT_EQ(cylinder_measure(mc, Word{1, 0, 0}), 0.0);
  EXPECT_THROW(cylinder_measure(mc, Word{2}), InvalidArgument);
}

TEST(CylinderMeasure, ProductFormulaMatchesExtensionSums) {
  const auto mc = chain();
  const auto q = mc.stochastic().to_rows();
  const auto& pi = mc.stationary();
  double sum = 0.0;
  for (const auto& tail : oracle::all_sequences(2, 4)) {
    oracle::Sequence w{0, 1, 1};
    w.insert(w.end(), tail.begin(), tail.end());
    sum += oracle::word_mass(q, pi, w);
  }
  EXPECT_NEAR(sum, 1.0 / 6.0, 1e-15);
}

TEST(CylinderMeasure, LogFormAvoidsUnderflow) {
  const auto mu = MarkovMeasure::bernoulli(kFull2, {0.9, 0.1});
  const Word ones(std::vector<Symbol>(400, 1));
  EXPECT_EQ(cylinder_measure(mu, ones), 0.0);
  EXPECT_NEAR(log_cylinder_measure(mu, ones.symbols()), 400 * std::log(0.1), 1e-9);
  EXPECT_EQ(log_cylinder_measure(chain(), Word{0, 0}.symbols()), -INFINITY);
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(entropy(fair_coin()), std::numbers::ln2, 1e-15);
  const auto mc = chain();
  EXPECT_NEAR(entropy(mc), 2.0 / 3.0 * std::numbers::ln2, 1e-15);
  const auto q = mc.stochastic().to_rows();
  const double block = oracle::block_entropy_rate(q, mc.stationary(), 14);
  EXPECT_NEAR(entropy(mc), block, 2 * std::log(3.0) / 14);
}

TEST(Integral, Examples) {
  const auto coin = fair_coin();
  EXPECT_NEAR(integral(coin, LocallyConstantPotential::constant(2, 3.25)), 3.25, 1e-15);
  const LocallyConstantPotential ones(2, 1, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(integral(coin, ones), 0.5);
  const double p = std::numbers::e / (1 + std::numbers::e);
  const auto biased = MarkovMeasure::bernoulli(kFull2, {1 - p, p});
  EXPECT_NEAR(integral(biased, ones), p, 1e-15);
  // range 2: mu(00) + mu(11) on the chain
  const LocallyConstantPotential same(2, 2, {1, 0, 0, 1});
  EXPECT_NEAR(integral(chain(), same), 1.0 / 3.0, 1e-15);
}

TEST(BirkhoffAverage, Examples) {
  const auto coin = fair_coin();
  const auto c = LocallyConstantPotential::constant(2, -1.5);
  const LocallyConstantPotential ones(2, 1, {0.0, 1.0});
  const auto batch = sample(coin, 1, 10000, 2024);
  EXPECT_DOUBLE_EQ(birkhoff_average_oracle(c, batch.points[0], 137), -1.5);
  // 4 sigma of Binomial(10^4, 1/2) / 10^4 is 0.02
  EXPECT_NEAR(birkhoff_average_oracle(ones, batch.points[0], 10000), 0.5, 0.02);
  std::vector<Symbol> periodic(20);
  for (std::size_t i = 0; i < periodic.size(); ++i) periodic[i] = static_cast<Symbol>(i % 2);
  const PointPrefix x(kFull2, Word(periodic));
  for (std::size_t n = 2; n <= 20; n += 2) EXPECT_EQ(birkhoff_average_oracle(ones, x, n), 0.5);
  EXPECT_THROW(birkhoff_average_oracle(ones, x, 21), CapacityError);
}

TEST(Sample, DeterministicForSeedAndThreadCount) {
  const auto mc = chain();
  const auto a = sample(mc, 64, 50, 99);
  const auto b = sample(mc, 64, 50, 99, 4);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i], b.points[i]);
  EXPECT_EQ(a.measure_id, mc.fingerprint());
  EXPECT_EQ(a.capacity, 50u);
  const auto c = sample(mc, 64, 50, 100);
  EXPECT_NE(a.points[0], c.points[0]);
}

TEST(Sample, FirstSymbolFrequency) {
  const auto batch = sample(fair_coin(), 100000, 1, 7);
  std::size_t zeros = 0;
  for (const auto& p : batch.points) zeros += p.at(0) == 0;
  // 6 sigma of the binomial proportion is 0.0095
  EXPECT_NEAR(static_cast<double>(zeros) / 1e5, 0.5, 0.01);
}

TEST(Sample, RespectsSupport) {
  const auto batch = sample(chain(), 500, 200, 1);
  for (const auto& p : batch.points)
    for (std::size_t i = 0; i + 1 < p.capacity(); ++i) ASSERT_FALSE(p.at(i) == 0 && p.at(i + 1) == 0);
}

TEST(Sample, RejectsEmptyRequests) {
  EXPECT_THROW(sample(fair_coin(), 0, 5, 1), InvalidArgument);
  EXPECT_THROW(sample(fair_coin(), 5, 0, 1), InvalidArgument);
}

// Kolmogorov consistency, shift invariance and total mass on random chains.
TEST(MeasureAxioms, RandomChains) {
  gen::Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sft = gen::primitive_sft(rng, 2, 3);
    const auto mu = gen::markov_measure(rng, sft);
    const std::size_t m = sft.alphabet_size();
    for (std::size_t len = 0; len <= 6; ++len) {
      double total = 0.0;
      for (const auto& w : sft.admissible_words(len)) {
        const double mass = cylinder_measure(mu, w);
        total += mass;
        double right = 0.0;
        double left = 0.0;
        for (Symbol a = 0; a < m; ++a) {
          std::vector<Symbol> ext(w.begin(), w.end());
          ext.push_back(a);
          right += cylinder_measure(mu, ext);
          ext.pop_back();
          ext.insert(ext.begin(), a);
          left += cylinder_measure(mu, ext);
        }
        EXPECT_NEAR(right, mass, 1e-12);
        EXPECT_NEAR(left, mass, 1e-12);
      }
      EXPECT_NEAR(total, 1.0, 1e-10);
    }
    const double block = oracle::block_entropy_rate(mu.stochastic().to_rows(), mu.stationary(), 10);
    double max_log_pi = 0.0;
    for (double p : mu.stationary()) max_log_pi = std::max(max_log_pi, std::abs(std::log(p)));
    EXPECT_NEAR(entropy(mu), block, 2 * max_log_pi / 10);
  }
}

}  // namespace
}  // namespace thermo
