#include <gtest/gtest.h>

#include <random>

#include "detmatroid/errors.hpp"
#include "detmatroid/slmf.hpp"
#include "support.hpp"

using namespace detmatroid;
using namespace testing_support;

TEST(Slmf, PublishedSlmfPassesBothCheckers) {
  const Slmf phi(2, slmf_6x4());
  EXPECT_TRUE(is_slmf(phi).holds);
  EXPECT_TRUE(is_slmf_via_matching(phi));
  const Slmf phi1(2, omega_6x5_phi1());
  EXPECT_TRUE(is_slmf(phi1).holds);
  EXPECT_TRUE(is_slmf_via_matching(phi1));
}

TEST(Slmf, ShapeIsEnforced) {
  EXPECT_THROW(Slmf(2, SupportPattern::from_columns(4, {{1, 2, 3}, {1, 2}})), ContractError);
  EXPECT_THROW(Slmf(2, SupportPattern::from_columns(4, {{1, 2, 3}})), ContractError);
}

TEST(Slmf, RepeatedColumnViolates) {
  const Slmf phi(1, SupportPattern::from_columns(3, {{1, 2}, {1, 2}}));
  const auto res = is_slmf(phi);
  EXPECT_FALSE(res.holds);
  ASSERT_TRUE(res.violating_columns.has_value());
  EXPECT_EQ(*res.violating_columns, RowMask{3});
  EXPECT_FALSE(is_slmf_via_matching(phi));
}

TEST(Slmf, CheckersAgreeExhaustivelyOnSmallShapes) {
  // every multiset of (r+1)-subsets of [m] with m - r columns, m <= 6
  for (int m = 2; m <= 6; ++m) {
    for (int r = 1; r < m; ++r) {
      std::vector<RowMask> subsets;
      for_each_k_subset(m, r + 1, [&](RowMask s) { subsets.push_back(s); });
      const int k = m - r;
      std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
      while (true) {
        std::vector<RowMask> cols;
        for (auto i : idx) cols.push_back(subsets[i]);
        const SupportPattern p(m, k, cols);
        const Slmf phi(r, p);
        const bool want = brute_slmf(as_sets(p), r);
        ASSERT_EQ(is_slmf(phi).holds, want);
        ASSERT_EQ(is_slmf_via_matching(phi), want);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == subsets.size()) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(pos)];
      }
    }
  }
}

TEST(Slmf, CheckersAgreeOnRandomLargerShapes) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    const int m = 7 + t % 2;
    const int r = 1 + t % (m - 2);
    const auto p = random_uniform_columns(rng, m, m - r, r + 1);
    const Slmf phi(r, p);
    const bool want = brute_slmf(as_sets(p), r);
    EXPECT_EQ(is_slmf(phi).holds, want);
    EXPECT_EQ(is_slmf_via_matching(phi), want);
  }
}

TEST(Relaxed, SlmfEqualsRelaxedWithNuOne) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 300; ++t) {
    const int r = 1 + t % 3;
    const int m = r + 4;
    const auto p = random_uniform_columns(rng, m, m - r, r + 1);
    EXPECT_EQ(is_relaxed_slmf(p, {.nu = 1, .r = r}).holds, is_slmf(Slmf(r, p)).holds);
  }
}

TEST(Relaxed, MatchesBruteForce) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 400; ++t) {
    const int m = 4 + t % 4;
    const int n = 3 + t % 5;
    const int r = 1 + t % 3;
    const int nu = 1 + t % r;
    const auto p = random_pattern(rng, m, n, 0.6);
    EXPECT_EQ(is_relaxed_slmf(p, {.nu = nu, .r = r}).holds, brute_relaxed(as_sets(p), m, r, nu));
  }
}

TEST(Relaxed, WitnessIsMinimalAndLexLeast) {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 200; ++t) {
    const int m = 5;
    const int r = 2;
    const auto p = random_pattern(rng, m, 4, 0.7);
    const auto res = is_relaxed_slmf(p, {.nu = 2, .r = r});
    if (res.holds) continue;
    ASSERT_TRUE(res.witness.has_value());
    const RowMask w = res.witness->subset;
    // no violating subset comes earlier in size-lex order
    for (RowMask s = 1; s < (RowMask{1} << m); ++s) {
      if (!size_lex_less(s, w) || popcount(s) < r + 1) continue;
      long long lhs = 0;
      for (RowMask c : p.columns()) lhs += std::max(popcount(c & s) - r, 0);
      const bool equality_fail = s == full_mask(m) && lhs != 2LL * (m - r);
      EXPECT_FALSE(lhs > 2LL * (popcount(s) - r) || equality_fail);
    }
  }
}

TEST(Relaxed, IsolatedRowBreaksEquality) {
  // a zero row leaves the inequalities intact but the total short
  const auto p = SupportPattern::from_columns(4, {{1, 2, 3}, {1, 2, 3}});
  const auto res = is_relaxed_slmf(p, {.nu = 2, .r = 2});
  ASSERT_FALSE(res.holds);
  EXPECT_EQ(res.witness->kind, ViolationWitness::Kind::equality_failed_at_full_set);
  EXPECT_EQ(res.witness->subset, full_mask(4));
}

TEST(Relaxed, RestrictedColumns) {
  const auto p = omega_6x5();
  const auto a = is_relaxed_slmf(p, {.nu = 1, .r = 2, .restricted_to = std::vector<int>{1, 2}});
  EXPECT_TRUE(a.holds);
  const auto b = is_relaxed_slmf(p, {.nu = 1, .r = 2, .restricted_to = std::vector<int>{3, 4, 5}});
  EXPECT_TRUE(b.holds);
  EXPECT_TRUE(is_relaxed_slmf(p, {.nu = 2, .r = 2}).holds);
}

TEST(Relaxed, CapacityGuard) {
  const auto p = SupportPattern::full(30, 2);
  EXPECT_THROW(is_relaxed_slmf(p, {.nu = 1, .r = 1}), CapacityError);
}

TEST(Induce, PublishedGroupGivesPublishedSlmf) {
  const auto induced = induce_slmf(omega_6x5(), {1, 2}, 2);
  EXPECT_EQ(induced.phi.pattern(), omega_6x5_phi1());
  EXPECT_EQ(induced.source, (std::vector<int>{1, 1, 1, 2}));
}

TEST(Induce, RandomRelaxedGroupsInduceSlmfs) {
  std::mt19937_64 rng(66);
  int checked = 0;
  while (checked < 200) {
    const int m = 5 + static_cast<int>(rng() % 3);
    const int r = 1 + static_cast<int>(rng() % 2);
    const auto p = random_pattern(rng, m, 1 + static_cast<int>(rng() % 4), 0.6);
    if (!is_relaxed_slmf(p, {.nu = 1, .r = r}).holds) continue;
    std::vector<int> group;
    for (int j = 1; j <= p.cols(); ++j) group.push_back(j);
    const auto induced = induce_slmf(p, group, r);
    EXPECT_EQ(induced.phi.cols(), m - r);
    EXPECT_TRUE(brute_slmf(as_sets(induced.phi.pattern()), r));
    for (int a = 1; a <= induced.phi.cols(); ++a) {
      const RowMask c = induced.phi.column(a);
      EXPECT_EQ(c & ~p.column(induced.source[static_cast<std::size_t>(a - 1)]), RowMask{0});
    }
    ++checked;
  }
}

TEST(Matching, SmallCases) {
  EXPECT_EQ(max_matching({RowMask{1}, RowMask{1}, RowMask{3}}, RowMask{3}), 2);
  EXPECT_EQ(max_matching({RowMask{6}, RowMask{6}, RowMask{6}}, RowMask{7}), 2);
}

TEST(Relaxed, AllFullColumnsNeedExactlyRColumns) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(is_relaxed_slmf(SupportPattern::full(5, n), {.nu = 2, .r = 2}).holds, n == 2);
  }
}

TEST(Slmf, RepeatedSupportFails) {
  const Slmf phi(2, SupportPattern::from_columns(5, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}));
  EXPECT_FALSE(is_slmf(phi).holds);
  EXPECT_FALSE(is_slmf_via_matching(phi));
}

TEST(Induce, SlmfGroupIsReturnedUpToOrder) {
  const auto p = slmf_6x4();
  const auto induced = induce_slmf(p, {1, 2, 3, 4}, 2);
  auto got = induced.phi.pattern().columns();
  auto want = p.columns();
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(Induce, ReducedPatternGroupGivesSlmf) {
  const auto induced = induce_slmf(omega_5x5_reduced(), {1, 3, 4}, 2);
  EXPECT_TRUE(is_slmf(induced.phi).holds);
}
