/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "seqcflp/model.hpp"

namespace seqcflp {

/// Raised instead of returning a truncated enumeration.
class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SeparationMode { Exact, Approximate };

struct SeparationResult {
  FollowerSolution y;
  /// Exact L(x_hat, y), or the linear bound alpha - beta . y when
  /// mode == Approximate and the result came straight from the sort.
  double value = 0.0;
  SeparationMode mode = SeparationMode::Exact;
  bool violated = false;
};

/// Linear over-estimator alpha - beta . y of L(x_hat, .) over {sum y = r}.
struct ApproxCoefficients {
  double alpha = 0.0;
  std::vector<double> beta;

  double bound(std::span<const std::uint8_t> y) const;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 2'000'000'000ULL;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

/// Best follower response to a binary leader decision by enumeration of all
/// r-subsets. Ties go to the lexicographically smallest sorted site list.
/// `budget` caps C(|J|, r) * |I|.
SeparationResult exact_best_response(
    const Instance& inst, const LeaderSolution& x_hat,
    std::uint64_t budget = kDefaultEnumerationBudget);

ApproxCoefficients approx_coefficients(const Instance& inst,
                                       std::span<const double> x_hat);

/// Indices of the r largest entries; stable, ties to the lower index.
std::vector<int> top_r_indices(std::span<const double> values, int r);

/// Minimizer of the linear bound over {sum y = r}; value is the bound.
SeparationResult approx_separation(const Instance& inst,
                                   std::span<const double> x_hat);

/// Approximate separation first; exact enumeration when the bound does not
/// already prove a violation. A non-violated result is always exact.
SeparationResult hybrid_separation(
    const Instance& inst, const LeaderSolution& x_hat, double theta_hat,
    double tol = 1e-6, std::uint64_t budget = kDefaultEnumerationBudget);

/// Exact enumeration with the violation flag set against theta_hat.
SeparationResult exact_separation(
    const Instance& inst, const LeaderSolution& x_hat, double theta_hat,
    double tol = 1e-6, std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace seqcflp
