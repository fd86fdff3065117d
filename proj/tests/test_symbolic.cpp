#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "thermo/error.hpp"
#include "thermo/potential.hpp"
#include "thermo/symbolic.hpp"

namespace thermo {
namespace {

const auto kFull2 = SubshiftOfFiniteType::full_shift(2);
const auto kGolden = SubshiftOfFiniteType::golden_mean();

PointPrefix point(const SubshiftOfFiniteType& sft, std::initializer_list<Symbol> s) { return {sft, Word(s)}; }

TEST(Admissibility, FullShiftAdmitsEverything) { EXPECT_TRUE(is_admissible(kFull2, Word{0, 1, 1, 0})); }

TEST(Admissibility, GoldenMeanForbidsDoubleOne) {
  EXPECT_FALSE(is_admissible(kGolden, Word{1, 1}));
  EXPECT_TRUE(is_admissible(kGolden, Word{0, 1, 0, 1}));
  EXPECT_TRUE(is_admissible(kGolden, Word{}));
}

TEST(Admissibility, MatchesPairwiseLookup) {
  const auto transition = kGolden.transition();
  for (std::size_t len = 0; len <= 6; ++len)
    for (const auto& w : oracle::all_sequences(2, len))
      EXPECT_EQ(is_admissible(kGolden, Word(w)), oracle::admissible(transition, w));
}

TEST(Admissibility, SymbolOutOfRangeThrows) {
  EXPECT_THROW(is_admissible(kFull2, Word{0, 2}), InvalidArgument);
}

TEST(Subshift, RejectsDeadSymbolsAndBadEntries) {
  EXPECT_THROW(SubshiftOfFiniteType({{1, 0}, {1, 0}}), InvalidArgument);  // column 1 empty
  EXPECT_THROW(SubshiftOfFiniteType({{1, 2}, {1, 1}}), InvalidArgument);
  EXPECT_THROW(SubshiftOfFiniteType({{1, 1}}), InvalidArgument);
  EXPECT_THROW(SubshiftOfFiniteType(std::vector<std::vector<int>>{}), InvalidArgument);
}

TEST(Subshift, PeriodAndIrreducibility) {
  EXPECT_EQ(kFull2.period(), 1u);
  EXPECT_EQ(kGolden.period(), 1u);
  const SubshiftOfFiniteType swap({{0, 1}, {1, 0}});
  EXPECT_TRUE(swap.is_irreducible());
  EXPECT_EQ(swap.period(), 2u);
  const SubshiftOfFiniteType split({{1, 0}, {0, 1}});
  EXPECT_FALSE(split.is_irreducible());
  EXPECT_EQ(split.period(), 0u);
}

TEST(Subshift, AdmissibleWordCountsFollowFibonacci) {
  // F(1) = 2, F(2) = 3, F(n) = F(n-1) + F(n-2)
  std::size_t a = 2, b = 3;
  EXPECT_EQ(kGolden.admissible_words(1).size(), a);
  EXPECT_EQ(kGolden.admissible_words(2).size(), b);
  for (std::size_t n = 3; n <= 12; ++n) {
    const std::size_t c = a + b;
    EXPECT_EQ(kGolden.admissible_words(n).size(), c);
    a = b;
    b = c;
  }
  EXPECT_EQ(kGolden.admissible_words(0).size(), 1u);
}

TEST(PointPrefix, RejectsInadmissibleWord) {
  EXPECT_THROW(point(kGolden, {0, 1, 1}), InvalidArgument);
}

TEST(Shift, DropsLeadingSymbols) {
  const auto x = point(kFull2, {0, 1, 1, 0});
  EXPECT_EQ(shift(x, 1).word(), (Word{1, 1, 0}));
  EXPECT_EQ(shift(x, 0).word(), x.word());
  const auto empty = shift(x, 4);
  EXPECT_EQ(empty.capacity(), 0u);
  EXPECT_TRUE(empty.word().empty());
  EXPECT_THROW(shift(x, 5), CapacityError);
}

TEST(Shift, ComposesAdditively) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Symbol> s(gen::uniform_size(rng, 0, 12));
    for (auto& v : s) v = static_cast<Symbol>(gen::uniform_size(rng, 0, 1));
    const PointPrefix x(kFull2, Word(s));
    const std::size_t a = gen::uniform_size(rng, 0, s.size());
    const std::size_t b = gen::uniform_size(rng, 0, s.size() - a);
    EXPECT_EQ(shift(shift(x, a), b), shift(x, a + b));
  }
}

TEST(DynamicalBall, ExamplesMatchBruteForce) {
  const auto transition = kFull2.transition();
  {
    const auto x = point(kFull2, {0, 1, 1, 0, 1});
    EXPECT_EQ(dynamical_ball_cylinder(2, 1, x), (Word{0, 1, 1}));
    const auto members = oracle::ball_prefixes(transition, {0, 1, 1, 0, 1}, 2, 1, 5);
    EXPECT_EQ(members, (std::set<oracle::Sequence>{{0, 1, 1}}));
  }
  EXPECT_EQ(dynamical_ball_cylinder(1, 0, point(kFull2, {0, 1})), (Word{0}));
  {
    const auto x = point(kFull2, {0, 1, 0, 1});
    EXPECT_EQ(dynamical_ball_cylinder(3, 0, x), (Word{0, 1, 0}));
    const auto members = oracle::ball_prefixes(transition, {0, 1, 0, 1}, 3, 0, 4);
    EXPECT_EQ(members, (std::set<oracle::Sequence>{{0, 1, 0}}));
  }
}

TEST(DynamicalBall, HorizonBeyondCapacityThrows) {
  EXPECT_THROW(dynamical_ball_cylinder(3, 2, point(kFull2, {0, 1, 0, 1})), CapacityError);
  EXPECT_THROW(dynamical_ball_cylinder(0, 2, point(kFull2, {0, 1, 0, 1})), InvalidArgument);
}

// Exhaustive metric correspondence: alphabet <= 3, n + k <= 8.
TEST(DynamicalBall, CylinderEqualsMetricBall) {
  const std::vector<SubshiftOfFiniteType> systems{kFull2, kGolden, SubshiftOfFiniteType::full_shift(3),
                                                  SubshiftOfFiniteType({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})};
  for (const auto& sft : systems) {
    const auto transition = sft.transition();
    const std::size_t m = sft.alphabet_size();
    for (std::size_t total = 1; total <= (m == 2 ? 8u : 6u); ++total) {
      const auto xs = sft.admissible_words(total);
      for (std::size_t n = 1; n <= total; ++n) {
        const std::size_t k = total - n;
        for (std::size_t pick = 0; pick < xs.size(); pick += std::max<std::size_t>(1, xs.size() / 7)) {
          const oracle::Sequence xv(xs[pick].begin(), xs[pick].end());
          const PointPrefix x(sft, xs[pick]);
          const Word cyl = dynamical_ball_cylinder(n, k, x);
          const auto members = oracle::ball_prefixes(transition, xv, n, k, total);
          ASSERT_EQ(members.size(), 1u);
          EXPECT_EQ(Word(*members.begin()), cyl);
        }
      }
    }
  }
}

TEST(DynamicalBall, Nesting) {
  gen::Rng rng(3);
  const auto words = kGolden.admissible_words(12);
  for (int trial = 0; trial < 100; ++trial) {
    const PointPrefix x(kGolden, words[gen::uniform_size(rng, 0, words.size() - 1)]);
    const std::size_t n = gen::uniform_size(rng, 1, 6);
    const std::size_t k = gen::uniform_size(rng, 0, 5);
    const Word base = dynamical_ball_cylinder(n, k, x);
    EXPECT_TRUE(base.is_prefix_of(dynamical_ball_cylinder(n + 1, k, x)));
    EXPECT_TRUE(base.is_prefix_of(dynamical_ball_cylinder(n, k + 1, x)));
  }
}

TEST(Birkhoff, ConstantPotential) {
  const auto phi = LocallyConstantPotential::constant(2, 0.75);
  const auto x = point(kFull2, {0, 1, 1, 0, 1, 0});
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_DOUBLE_EQ(birkhoff_sum(phi, x, n), 0.75 * static_cast<double>(n));
}

TEST(Birkhoff, CountsOnes) {
  const LocallyConstantPotential phi(2, 1, {0.0, 1.0});
  EXPECT_EQ(birkhoff_sum(phi, point(kFull2, {0, 1, 1, 0}), 4), 2.0);
}

TEST(Birkhoff, RangeTwoTableMatchesNaiveLoop) {
  const std::vector<double> table{std::log(0.3), std::log(1.7), std::log(2.5), std::log(0.9)};
  const LocallyConstantPotential phi(2, 2, table);
  const oracle::Sequence xs{1, 0, 1, 1};
  const PointPrefix x(kFull2, Word(xs));
  EXPECT_NEAR(birkhoff_sum(phi, x, 3), oracle::naive_birkhoff(table, 2, 2, xs, 3), 1e-15);
  EXPECT_NEAR(birkhoff_sum(phi, x, 3), std::log(2.5) + std::log(1.7) + std::log(0.9), 1e-15);
  EXPECT_THROW(birkhoff_sum(phi, x, 4), CapacityError);
}

TEST(Birkhoff, CocycleLaw) {
  gen::Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto sft = gen::primitive_sft(rng);
    const std::size_t r = gen::uniform_size(rng, 1, 3);
    const auto phi = gen::potential(rng, sft.alphabet_size(), r, 2.0);
    const auto words = sft.admissible_words(14);
    const PointPrefix x(sft, words[gen::uniform_size(rng, 0, words.size() - 1)]);
    const std::size_t n = gen::uniform_size(rng, 1, 6);
    const std::size_t m = gen::uniform_size(rng, 1, 14 - n - (r - 1));
    const double whole = birkhoff_sum(phi, x, n + m);
    const double split = birkhoff_sum(phi, x, n) + birkhoff_sum(phi, shift(x, n), m);
    EXPECT_NEAR(whole, split, 1e-12 * static_cast<double>(n + m) * phi.max_abs());
  }
}

}  // namespace
}  // namespace thermo
