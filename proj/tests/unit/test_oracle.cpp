#include <gtest/gtest.h>

#include <random>

#include "detmatroid/errors.hpp"
#include "detmatroid/oracle.hpp"
#include "detmatroid/rng.hpp"
#include "support.hpp"

using namespace detmatroid;
using namespace testing_support;

TEST(Rng, DeriveSeedSeparatesStreams) {
  EXPECT_NE(derive_seed(1, Stream::oracle, 0), derive_seed(1, Stream::census, 0));
  EXPECT_NE(derive_seed(1, Stream::oracle, 0), derive_seed(1, Stream::oracle, 1));
  EXPECT_EQ(derive_seed(5, Stream::sampling, 3), derive_seed(5, Stream::sampling, 3));
  auto rng = make_rng(9, Stream::oracle);
  for (int t = 0; t < 1000; ++t) EXPECT_LT(uniform_below(rng, 7), 7U);
}

TEST(Oracle, Dimension) {
  EXPECT_EQ(variety_dimension(6, 5, 2), 18);
  EXPECT_EQ(variety_dimension(6, 8, 2), 24);
  EXPECT_EQ(variety_dimension(3, 3, 3), 9);
}

TEST(Oracle, TrialPrimesDescend) {
  const auto ps = trial_primes(kDefaultPrime, 3);
  ASSERT_EQ(ps.size(), 3U);
  EXPECT_EQ(ps[0], kDefaultPrime);
  EXPECT_GT(ps[0], ps[1]);
  EXPECT_GT(ps[1], ps[2]);
  for (auto p : ps) EXPECT_TRUE(is_prime(p));
}

TEST(Oracle, FullPatternHasDimensionRank) {
  for (int r = 1; r <= 3; ++r) {
    EXPECT_EQ(jacobian_rank(SupportPattern::full(5, 4), r, kDefaultPrime, 1), r * (5 + 4 - r));
  }
}

TEST(Oracle, SingleEntryHasRankOne) {
  const auto p = SupportPattern::from_columns(3, {{2}, {}, {}});
  EXPECT_EQ(jacobian_rank(p, 2, kDefaultPrime, 4), 1);
  EXPECT_EQ(test_independence(p, 2).verdict, OracleVerdict::Kind::independent);
}

TEST(Oracle, AgreesWithExactRationalRank) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    const int m = 3 + t % 3;
    const int n = 3 + t % 4;
    const int r = 1 + t % 2;
    const auto p = random_pattern(rng, m, n, 0.6);
    const int exact = std::max(rational_jacobian_rank(p, r, 100 + t), rational_jacobian_rank(p, r, 200 + t));
    const auto v = test_independence(p, r, {.seed = static_cast<std::uint64_t>(t)});
    EXPECT_EQ(v.rank_observed, exact);
  }
}

TEST(Oracle, RankIsMonotoneUnderInclusion) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const auto p = random_pattern(rng, 5, 5, 0.5);
    auto cols = p.columns();
    cols[static_cast<std::size_t>(t % 5)] |= bit_of(1 + t % 5);
    const SupportPattern q(5, 5, cols);
    EXPECT_LE(test_independence(p, 2).rank_observed, test_independence(q, 2).rank_observed);
  }
}

TEST(Oracle, DeterministicForFixedSeed) {
  const auto p = omega_6x5();
  const auto a = is_base(p, 2, {.seed = 42});
  const auto b = is_base(p, 2, {.seed = 42});
  EXPECT_EQ(a.rank_observed, b.rank_observed);
  EXPECT_EQ(a.trials, b.trials);
  EXPECT_EQ(a.primes, b.primes);
}

TEST(Oracle, FixturesAreBases) {
  for (const auto& p : {omega_6x5(), omega_6x5_unpartitioned(), omega_5x5_reduced(), omega_6x8()}) {
    const auto v = is_base(p, 2);
    EXPECT_EQ(v.verdict, OracleVerdict::Kind::base);
    EXPECT_EQ(v.rank_observed, variety_dimension(p.rows(), p.cols(), 2));
    EXPECT_LE(v.trials, 3);
  }
}

TEST(Oracle, WrongSizeIsNotBase) {
  const auto p = SupportPattern::full(4, 4);
  EXPECT_EQ(is_base(p, 2).verdict, OracleVerdict::Kind::not_base);
}

TEST(Oracle, RankOneGridForestCriterion) {
  // r = 1: independent iff the bipartite graph is a forest
  std::mt19937_64 rng(19);
  for (int t = 0; t < 60; ++t) {
    const auto p = random_pattern(rng, 4, 4, 0.35);
    std::vector<int> parent(8);
    for (int v = 0; v < 8; ++v) parent[static_cast<std::size_t>(v)] = v;
    auto find = [&](int v) {
      while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
      return v;
    };
    bool forest = true;
    for (int j = 1; j <= 4; ++j) {
      for (int i = 1; i <= 4; ++i) {
        if (!p.contains(i, j)) continue;
        const int a = find(i - 1);
        const int b = find(3 + j);
        if (a == b) forest = false;
        parent[static_cast<std::size_t>(a)] = b;
      }
    }
    EXPECT_EQ(test_independence(p, 1).verdict == OracleVerdict::Kind::independent, forest);
  }
}

TEST(Oracle, NecessityHoldsOnBases) {
  for (const auto& p : {omega_6x5(), omega_6x8()}) {
    const auto rep = check_necessity(p, 2);
    EXPECT_TRUE(rep.consistent);
    ASSERT_TRUE(rep.relaxed.has_value());
    EXPECT_TRUE(rep.relaxed->holds);
  }
}

TEST(Oracle, RandomRankR) {
  const PrimeField F(kDefaultPrime);
  const auto X = random_rank_r(5, 6, 2, kDefaultPrime, 3);
  EXPECT_EQ(gfp_rank(X, kDefaultPrime), 2U);
  EXPECT_THROW(random_rank_r(5, 6, 2, 3, 3), ContractError);
}

TEST(Oracle, ReductionPreservesBaseVerdict) {
  std::mt19937_64 rng(23);
  int compared = 0;
  for (int t = 0; t < 400 && compared < 50; ++t) {
    const auto p = random_pattern(rng, 5, 5, 0.6);
    if (p.size() != variety_dimension(5, 5, 2)) continue;
    const auto red = reduce(p, 2);
    if (red.log.empty() || red.reduced.rows() <= 2 || red.reduced.cols() <= 2) continue;
    ++compared;
    EXPECT_EQ(is_base(p, 2).verdict == OracleVerdict::Kind::base,
              is_base(red.reduced, 2).verdict == OracleVerdict::Kind::base);
  }
  EXPECT_GT(compared, 0);
}

TEST(Oracle, NecessityNeverFlagsRandomPatterns) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 1000; ++t) {
    const auto p = random_pattern(rng, 6, 6, 0.4 + 0.2 * static_cast<double>(t % 3));
    EXPECT_TRUE(check_necessity(p, 2, {.seed = static_cast<std::uint64_t>(t)}).consistent);
  }
}

TEST(Oracle, CompleteBipartiteBlockIsNotBase) {
  // three full columns in a 3 x 4 grid, size (m-1)(n+1) = 10
  const auto p = SupportPattern::from_columns(3, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1}});
  ASSERT_EQ(p.size(), 10);
  EXPECT_EQ(is_base(p, 2).verdict, OracleVerdict::Kind::not_base);
}
