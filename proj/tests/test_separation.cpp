/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "seqcflp/separation.hpp"
#include "test_support.hpp"

namespace seqcflp {
namespace {

using testing::Market;

LeaderSolution e(int n, int j) {
  const std::vector<int> s{j};
  return LeaderSolution::from_sites(n, s);
}

LeaderSolution random_leader(std::mt19937_64& rng, const Market& m) {
  std::vector<int> perm(m.sites());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> s(perm.begin(), perm.begin() + m.p);
  std::sort(s.begin(), s.end());
  return LeaderSolution::from_sites(m.sites(), s);
}

TEST(Binomial, SmallAndSaturating) {
  EXPECT_EQ(binomial(5, 2), 10U);
  EXPECT_EQ(binomial(100, 2), 4950U);
  EXPECT_EQ(binomial(3, 4), 0U);
  EXPECT_EQ(binomial(7, 0), 1U);
  EXPECT_EQ(binomial(200, 100), std::numeric_limits<std::uint64_t>::max());
}

TEST(ExactBestResponse, WorkedExamples) {
  const auto t3 = testing::t3().instance();
  const auto r3 = exact_best_response(t3, e(3, 0));
  EXPECT_EQ(r3.y.sites(), (std::vector<int>{1}));
  EXPECT_DOUBLE_EQ(r3.value, 0.625);
  EXPECT_EQ(r3.mode, SeparationMode::Exact);

  const auto t1 = testing::t1().instance();
  const auto r1 = exact_best_response(t1, e(2, 0));
  EXPECT_EQ(r1.y.sites(), (std::vector<int>{1}));
  EXPECT_DOUBLE_EQ(r1.value, 0.5);
}

TEST(ExactBestResponse, RefusesOverBudget) {
  std::mt19937_64 rng(5);
  const Market m = testing::random_market(rng, 10, 10, 10, 3);
  const auto inst = m.instance();
  EXPECT_THROW(exact_best_response(inst, random_leader(rng, m), 5),
               EnumerationBudgetExceeded);
}

TEST(ExactBestResponse, RejectsFractionalLeader) {
  const auto t3 = testing::t3().instance();
  EXPECT_THROW(exact_best_response(t3, LeaderSolution{{0.5, 0.5, 0.0}}),
               std::invalid_argument);
}

TEST(ExactBestResponse, MatchesBruteForce) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    const Market m = testing::random_market(rng, 8, 3, 10, 3);
    const auto inst = m.instance();
    const auto x = random_leader(rng, m);
    const auto res = exact_best_response(inst, x);
    EXPECT_EQ(res.y.count(), m.r);
    EXPECT_NEAR(res.value, testing::inner_min(m, x.x), 1e-13);
    std::vector<double> yd(res.y.y.begin(), res.y.y.end());
    EXPECT_NEAR(res.value, testing::share_max(m, x.x, yd), 1e-13);
  }
}

TEST(ApproxCoefficients, WorkedExample) {
  const auto t3 = testing::t3().instance();
  const std::vector<double> x{1.0, 0.0, 0.0};
  const auto c = approx_coefficients(t3, x);
  EXPECT_NEAR(c.alpha, 5.0 * 8.0 / 48.0, 1e-15);
  ASSERT_EQ(c.beta.size(), 3U);
  EXPECT_NEAR(c.beta[0], 0.0, 1e-15);
  EXPECT_NEAR(c.beta[1], 10.0 / 48.0, 1e-15);
  EXPECT_NEAR(c.beta[2], 5.0 / 48.0, 1e-15);

  const auto res = approx_separation(t3, x);
  EXPECT_EQ(res.y.sites(), (std::vector<int>{1}));
  EXPECT_NEAR(res.value, 0.625, 1e-15);
  EXPECT_EQ(res.mode, SeparationMode::Approximate);

  // Bound over each singleton response; the endpoint chords are tight.
  const double want[3] = {5.0 / 6.0, 0.625, 0.7291666667};
  const double truth[3] = {5.0 / 6.0, 0.625, 5.0 / 7.0};
  for (int j = 0; j < 3; ++j) {
    const std::vector<int> s{j};
    const auto y = FollowerSolution::from_sites(3, s);
    EXPECT_NEAR(c.bound(y.y), want[j], 1e-9);
    EXPECT_GE(c.bound(y.y), truth[j] - 1e-15);
  }
}

TEST(TopR, StableTiesToLowerIndex) {
  const std::vector<double> v{0.2, 0.5, 0.5, 0.1, 0.5};
  EXPECT_EQ(top_r_indices(v, 2), (std::vector<int>{1, 2}));
  EXPECT_EQ(top_r_indices(v, 4), (std::vector<int>{0, 1, 2, 4}));
  EXPECT_EQ(top_r_indices(v, 0), (std::vector<int>{}));
}

TEST(HybridSeparation, WorkedExamples) {
  const auto t3 = testing::t3().instance();
  const auto a = hybrid_separation(t3, e(3, 0), 0.7);
  EXPECT_TRUE(a.violated);
  EXPECT_EQ(a.mode, SeparationMode::Approximate);
  EXPECT_EQ(a.y.sites(), (std::vector<int>{1}));
  EXPECT_NEAR(a.value, 0.625, 1e-15);

  const auto b = hybrid_separation(t3, e(3, 0), 0.625);
  EXPECT_FALSE(b.violated);
  EXPECT_EQ(b.mode, SeparationMode::Exact);
  EXPECT_NEAR(b.value, 0.625, 1e-15);
}

TEST(ApproxSeparation, BoundOverestimatesAndSortIsOptimal) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    const Market m = testing::random_market(rng, 8, 3, 10, 3);
    const auto inst = m.instance();
    const int n = m.sites();
    auto xh = testing::random_point(rng, n);
    if (t % 2 == 0) xh = random_leader(rng, m).x;
    const auto c = approx_coefficients(inst, xh);
    const auto res = approx_separation(inst, xh);
    double best = std::numeric_limits<double>::infinity();
    testing::for_each_mask(n, m.r, [&](std::uint64_t ymask) {
      const auto yd = testing::mask_vector(n, ymask);
      const std::vector<std::uint8_t> y(yd.begin(), yd.end());
      const double bound = c.bound(y);
      best = std::min(best, bound);
      // Relaxed share with x + y - xy in the denominator.
      double truth = 0.0;
      for (int i = 0; i < m.customers(); ++i) {
        double num = m.uL[i];
        double den = m.uL[i] + m.uF[i];
        for (int j = 0; j < n; ++j) {
          num += m.w[i][j] * xh[j];
          den += m.w[i][j] * (xh[j] + yd[j] - xh[j] * yd[j]);
        }
        truth += m.h[i] * num / den;
      }
      EXPECT_GE(bound, truth - 1e-9);
    });
    EXPECT_NEAR(res.value, best, 1e-12);
  }
}

TEST(HybridSeparation, NonViolatedResultIsCertified) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int quiet = 0;
  for (int t = 0; t < 120; ++t) {
    const Market m = testing::random_market(rng, 8, 3, 9, 3);
    const auto inst = m.instance();
    const auto x = random_leader(rng, m);
    const double z = testing::inner_min(m, x.x);
    const double theta = z + (u01(rng) - 0.7) * 0.05;
    const auto res = hybrid_separation(inst, x, theta, 1e-6);
    if (!res.violated) {
      EXPECT_GE(z, theta - 1e-6);
      ++quiet;
    } else {
      EXPECT_LT(res.value, theta - 1e-6);
      std::vector<double> yd(res.y.y.begin(), res.y.y.end());
      EXPECT_NEAR(res.value, testing::share_max(m, x.x, yd), 1e-12);
    }
    const auto ex = exact_separation(inst, x, theta, 1e-6);
    EXPECT_EQ(ex.violated, z < theta - 1e-6);
  }
  EXPECT_GT(quiet, 20);
}

}  // namespace
}  // namespace seqcflp
