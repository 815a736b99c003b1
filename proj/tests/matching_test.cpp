#include <gtest/gtest.h>

#include "birkhoff/error.hpp"
#include "birkhoff/matching.hpp"
#include "birkhoff/random.hpp"
#include "oracles.hpp"

namespace birkhoff {
namespace {

TEST(MaxScoreMatching, IdentityOnlyMask) {
  SupportMask mask(4);
  for (std::size_t i = 0; i < 4; ++i) mask.set(i, i, true);
  Rng rng(1);
  EXPECT_EQ(max_score_matching(mask, random_identifying_score(4, rng)), Permutation::identity(4));
}

TEST(MaxScoreMatching, PowerScorePrefersIdentity) {
  EXPECT_EQ(max_score_matching(SupportMask(2, true), power_score(2)), Permutation::identity(2));
}

TEST(MaxScoreMatching, MatchesBruteForceOnRandomMasks) {
  Rng rng(42);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const ScoreMatrix s = random_identifying_score(n, rng);
    SupportMask mask(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mask.set(i, j, uniform01(rng) < 0.6);
    const auto expected =
        oracle::brute_max(s.matrix(), [&](std::size_t i, std::size_t j) { return mask(i, j); });
    if (!expected) {
      EXPECT_THROW(max_score_matching(mask, s), NoPerfectMatching);
      continue;
    }
    const Permutation got = max_score_matching(mask, s);
    EXPECT_EQ(got, *expected);
    for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(mask(i, got[i]));
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(MaxScoreMatching, ExactOrderWithPowerScore) {
  // Support of a random doubly stochastic matrix always admits a matching.
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const DoublyStochastic a = random_doubly_stochastic(n, 1 + trial % 4, rng);
    const SupportMask mask = SupportMask::of(a.matrix());
    const ScoreMatrix s = power_score(n);
    const auto expected =
        oracle::brute_max(s.matrix(), [&](std::size_t i, std::size_t j) { return mask(i, j); });
    ASSERT_TRUE(expected.has_value());
    EXPECT_EQ(max_score_matching(mask, s), *expected);
  }
}

TEST(MaxScoreMatching, ReportsMissingMatching) {
  SupportMask mask(3, true);
  for (std::size_t j = 0; j < 3; ++j) mask.set(1, j, false);
  EXPECT_THROW(max_score_matching(mask, power_score(3)), NoPerfectMatching);
}

TEST(MaxScoreMatching, DimensionMismatch) {
  EXPECT_THROW(max_score_matching(SupportMask(3, true), power_score(2)), InvalidArgument);
}

TEST(MaxWeightMatchingDense, ZeroGivesIdentity) {
  for (std::size_t n = 1; n <= 8; ++n) {
    EXPECT_EQ(max_weight_matching_dense(SquareMatrix(n)), Permutation::identity(n));
  }
}

TEST(MaxWeightMatchingDense, DiagonalDominance) {
  SquareMatrix w(5);
  Rng rng(2);
  for (double& v : w.values()) v = uniform01(rng);
  for (std::size_t i = 0; i < 5; ++i) w(i, i) = 100.0;
  EXPECT_EQ(max_weight_matching_dense(w), Permutation::identity(5));
}

TEST(MaxWeightMatchingDense, MatchesBruteForce) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4;
    SquareMatrix w(n);
    for (double& v : w.values()) v = 10.0 * uniform01(rng) - 5.0;
    const auto expected = oracle::brute_max(w, [](std::size_t, std::size_t) { return true; });
    EXPECT_EQ(max_weight_matching_dense(w), *expected);
  }
}

TEST(MaxWeightMatchingDense, Deterministic) {
  Rng rng(4);
  SquareMatrix w(30);
  for (double& v : w.values()) v = std::floor(3.0 * uniform01(rng));  // many ties
  const Permutation first = max_weight_matching_dense(w);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(max_weight_matching_dense(w), first);
}

}  // namespace
}  // namespace birkhoff
