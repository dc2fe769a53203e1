#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "candy/compositions.hpp"
#include "candy/trajectory.hpp"
#include "oracle.hpp"

using candy::Configuration;
using candy::Count;
using candy::Outcome;

namespace {

Configuration cfg(std::vector<Count> v) { return Configuration::from_counts(v); }

}  // namespace

TEST(Analyze, FixedStart) {
  const auto s = candy::analyze(cfg({3, 3, 3}), 10);
  EXPECT_EQ(s.transient, 0u);
  EXPECT_EQ(s.period, 1u);
  EXPECT_EQ(s.outcome, Outcome::ActiveFixed);
  EXPECT_EQ(s.attractor_canonical.vector(), (std::vector<Count>{3, 3, 3}));
}

TEST(Analyze, TwoCycle) {
  // Cycle {[2,1,1],[0,2,2]}; the least state is [0,2,2].
  const auto s = candy::analyze(cfg({4, 0, 0}), 100);
  EXPECT_EQ(s.transient, 1u);
  EXPECT_EQ(s.period, 2u);
  EXPECT_EQ(s.outcome, Outcome::Periodic);
  EXPECT_EQ(s.attractor_canonical.vector(), (std::vector<Count>{0, 2, 2}));
  EXPECT_EQ(s.rounds_computed, 3u);
}

TEST(Analyze, LoneOneIsFilledIn) {
  const auto s = candy::analyze(cfg({3, 1, 3, 3}), 100);
  EXPECT_EQ(s.transient, 1u);
  EXPECT_EQ(s.period, 1u);
  EXPECT_EQ(s.outcome, Outcome::ActiveFixed);
  EXPECT_EQ(s.attractor_canonical.vector(), (std::vector<Count>{2, 3, 2, 3}));
}

TEST(Analyze, ThreeCycleBelowThreshold) {
  const auto s = candy::analyze(cfg({3, 2, 1}), 100);
  EXPECT_EQ(s.transient, 0u);
  EXPECT_EQ(s.period, 3u);
  EXPECT_EQ(s.outcome, Outcome::Periodic);
  EXPECT_EQ(s.attractor_canonical.vector(), (std::vector<Count>{1, 2, 3}));
}

TEST(Analyze, FrozenOutcome) {
  const auto s = candy::analyze(cfg({0, 2, 0, 0, 0}), 100);
  EXPECT_EQ(s.outcome, Outcome::Frozen);
  EXPECT_EQ(s.transient, 1u);
}

TEST(Analyze, CapIsExactlyTransientPlusPeriod) {
  // [4,0,0] needs 3 rounds to see a repeat.
  EXPECT_THROW(candy::analyze(cfg({4, 0, 0}), 2), candy::CapExceeded);
  EXPECT_NO_THROW(candy::analyze(cfg({4, 0, 0}), 3));
  EXPECT_NO_THROW(candy::analyze(cfg({3, 3, 3}), 1));
  EXPECT_THROW(candy::analyze(cfg({3, 3, 3}), 0), candy::InvalidInput);
  try {
    candy::analyze(cfg({4, 0, 0}), 1);
    FAIL();
  } catch (const candy::CapExceeded& e) {
    EXPECT_EQ(e.initial(), (std::vector<Count>{4, 0, 0}));
  }
}

TEST(Analyze, AgreesWithNaiveSimulation) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 3000; ++k) {
    const oracle::State x = oracle::random_state(rng, 12, 60);
    const auto expected = oracle::simulate(x);
    const auto s = candy::analyze(cfg(x));
    ASSERT_EQ(s.transient, expected.transient) << candy::to_string(x);
    ASSERT_EQ(s.period, expected.period) << candy::to_string(x);
    oracle::State least = oracle::canonical(expected.cycle.front());
    for (const auto& state : expected.cycle) least = std::min(least, oracle::canonical(state));
    EXPECT_EQ(s.attractor_canonical.vector(), least);
    EXPECT_EQ(s.rounds_computed, s.transient + s.period);
    EXPECT_LE(s.abundant_fix_round, s.transient + s.period);
    if (s.period == 1) {
      const bool all_low = std::all_of(least.begin(), least.end(), [](Count v) { return v <= 1; });
      EXPECT_EQ(s.outcome, all_low ? Outcome::Frozen : Outcome::ActiveFixed);
    } else {
      EXPECT_EQ(s.outcome, Outcome::Periodic);
    }
  }
}

TEST(Analyze, TrajectoryProperties) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const oracle::State x = oracle::random_state(rng, 9, 30);
    const Configuration cx = cfg(x);
    const auto s = candy::analyze(cx);
    EXPECT_LE(s.transient + s.period, candy::composition_count(cx.n(), cx.c()));

    const auto entry = candy::trace(cx, s.transient).back();
    const auto again = candy::analyze(entry);
    EXPECT_EQ(again.transient, 0u);
    EXPECT_EQ(again.period, s.period);

    for (std::size_t r = 0; r < cx.n(); ++r) {
      const auto rotated = candy::analyze(candy::rotate(cx, r));
      EXPECT_EQ(rotated.transient, s.transient);
      EXPECT_EQ(rotated.period, s.period);
      EXPECT_EQ(rotated.attractor_canonical, s.attractor_canonical);
    }
  }
}

TEST(LemmaOne, StaticAbundantPile) {
  const auto r = candy::verify_lemma_one(cfg({4, 2, 2}), 10);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.fix_round, 0u);
  EXPECT_TRUE(r.set_shrink_rounds.empty());
}

TEST(LemmaOne, ShrinkingSet) {
  // [7,0,0] -> [5,1,1] -> [3,2,2] (fixed): abundant sets {0}, {0}, {}.
  const auto r = candy::verify_lemma_one(cfg({7, 0, 0}), 100);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.set_shrink_rounds, (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(r.fix_round, 2u);
  EXPECT_FALSE(r.violation.has_value());
}

TEST(LemmaOne, VacuousWithoutAbundantPiles) {
  const auto r = candy::verify_lemma_one(cfg({1, 1, 1}), 10);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.fix_round, 0u);
}

TEST(LemmaOne, CapPropagates) {
  EXPECT_THROW(candy::verify_lemma_one(cfg({4, 0, 0}), 1), candy::CapExceeded);
}

TEST(LemmaOne, HoldsOnRandomTrajectories) {
  std::mt19937_64 rng(123);
  for (int k = 0; k < 2000; ++k) {
    const oracle::State x = oracle::random_state(rng, 12, 60);
    const auto r = candy::verify_lemma_one(cfg(x));
    ASSERT_TRUE(r.holds) << candy::to_string(x) << ": " << r.violation->description;
    EXPECT_EQ(r.fix_round, candy::analyze(cfg(x)).abundant_fix_round);
  }
}

TEST(LemmaOne, FixRoundMatchesNaiveScan) {
  std::mt19937_64 rng(321);
  for (int k = 0; k < 500; ++k) {
    const oracle::State x = oracle::random_state(rng, 8, 40);
    const auto run = oracle::simulate(x);
    // Abundant signature per round over the prefix plus one cycle.
    std::vector<oracle::State> seq;
    oracle::State s = x;
    for (std::uint64_t t = 0; t < run.transient + 2 * run.period; ++t) {
      oracle::State sig(s.size(), 0);
      for (std::size_t i = 0; i < s.size(); ++i) sig[i] = s[i] >= 4 ? s[i] : 0;
      seq.push_back(sig);
      s = oracle::step(s);
    }
    std::uint64_t fix = seq.size() - 1;
    while (fix > 0 && seq[fix - 1] == seq[fix]) --fix;
    EXPECT_EQ(candy::analyze(cfg(x)).abundant_fix_round, fix) << candy::to_string(x);
  }
}

TEST(Trace, Examples) {
  const auto frozen = candy::trace(cfg({1, 0, 0}), 2);
  ASSERT_EQ(frozen.size(), 3u);
  for (const auto& s : frozen) EXPECT_EQ(s.vector(), (std::vector<Count>{1, 0, 0}));

  const auto moving = candy::trace(cfg({4, 0, 0}), 2);
  ASSERT_EQ(moving.size(), 3u);
  EXPECT_EQ(moving[0].vector(), (std::vector<Count>{4, 0, 0}));
  EXPECT_EQ(moving[1].vector(), (std::vector<Count>{2, 1, 1}));
  EXPECT_EQ(moving[2].vector(), (std::vector<Count>{0, 2, 2}));

  const auto fixed = candy::trace(cfg({3, 3, 3}), 1);
  ASSERT_EQ(fixed.size(), 2u);
  EXPECT_EQ(fixed[1].vector(), (std::vector<Count>{3, 3, 3}));

  EXPECT_EQ(candy::trace(cfg({3, 3, 3}), 0).size(), 1u);
}

TEST(Trace, ConservesTotal) {
  const auto states = candy::trace(cfg({9, 0, 0, 1, 0, 5}), 50);
  for (const auto& s : states) {
    Count sum = 0;
    for (Count v : s.counts()) sum += v;
    EXPECT_EQ(sum, 15u);
    EXPECT_EQ(s.c(), 15u);
  }
}
