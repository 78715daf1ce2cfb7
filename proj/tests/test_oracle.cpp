/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <gtest/gtest.h>

#include <random>

#include "seqcflp/oracle.hpp"
#include "test_support.hpp"

namespace seqcflp {
namespace {

using testing::Market;

TEST(Enumeration, WorkedExamples) {
  const auto a = solve_enumeration(testing::t3().instance());
  EXPECT_NEAR(a.z_star, 0.625, 1e-15);
  EXPECT_EQ(a.x_star.sites(), (std::vector<int>{0}));
  const auto b = solve_enumeration(testing::t1().instance());
  EXPECT_NEAR(b.z_star, 0.5, 1e-15);
  EXPECT_EQ(b.x_star.sites(), (std::vector<int>{0}));
}

TEST(Enumeration, WorkedInnerMinima) {
  const auto inst = testing::t3().instance();
  const double want[3] = {0.625, 0.375, 2.0 / 7.0};
  for (int j = 0; j < 3; ++j) {
    const std::vector<int> s{j};
    const auto x = LeaderSolution::from_sites(3, s);
    EXPECT_NEAR(inner_min_max_form(inst, x), want[j], 1e-15);
    EXPECT_NEAR(inner_min_disjoint_plus(inst, x), want[j], 1e-15);
  }
}

TEST(Enumeration, RefusesOverBudget) {
  std::mt19937_64 rng(3);
  const Market m = testing::random_market(rng, 10, 10, 10, 3);
  EXPECT_THROW(solve_enumeration(m.instance(), 100), EnumerationBudgetExceeded);
}

TEST(Enumeration, MatchesBruteForceAndPicksSmallestOptimum) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    const Market m = testing::random_market(rng, 8, 3, 9, 3);
    const auto res = solve_enumeration(m.instance());
    const double z = testing::brute_force_z(m);
    EXPECT_NEAR(res.z_star, z, 1e-13);
    EXPECT_NEAR(testing::inner_min(m, res.x_star.x), res.z_star, 1e-13);
    EXPECT_EQ(static_cast<int>(res.x_star.sites().size()), m.p);
    EXPECT_GT(res.evaluations, 0U);
  }
}

TEST(Enumeration, CoLocationFreeInnerMinimumEqualsMaxForm) {
  std::mt19937_64 rng(19);
  int pairs = 0;
  for (int t = 0; t < 60; ++t) {
    const Market m = testing::random_market(rng, 8, 3, 9, 3);
    const auto inst = m.instance();
    testing::for_each_mask(m.sites(), m.p, [&](std::uint64_t X) {
      if (pairs > 2000) return;
      const auto x = LeaderSolution{testing::mask_vector(m.sites(), X)};
      const double a = inner_min_disjoint_plus(inst, x);
      const double b = inner_min_max_form(inst, x);
      EXPECT_NEAR(a, b, 1e-12);
      EXPECT_NEAR(a, testing::inner_min_disjoint(m, X), 1e-13);
      EXPECT_NEAR(b, testing::inner_min(m, x.x), 1e-13);
      ++pairs;
    });
  }
  EXPECT_GT(pairs, 500);
}

}  // namespace
}  // namespace seqcflp
