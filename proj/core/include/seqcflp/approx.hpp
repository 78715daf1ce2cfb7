/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <limits>

#include "seqcflp/bnc.hpp"
#include "seqcflp/model.hpp"
#include "seqcflp/separation.hpp"

namespace seqcflp {

struct ApproxConfig {
  /// Relative pruning tolerance on the surrogate objective.
  double tol = 1e-9;
  double time_limit = 3600.0;
  std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
  int max_fractional_rounds = 5;
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
};

struct RatioConstants {
  double gamma_m = 0.0;
  double gamma_M = 0.0;
  double ratio_lower = 0.0;
};

struct ApproxReport {
  LeaderSolution x_H;
  double surrogate_value = 0.0;
  /// min_y L(x_H, y), certified by enumeration.
  double z_H = 0.0;
  /// Upper bound on z* implied by the surrogate optimum; valid when
  /// status == Optimal.
  double z_upper = 1.0;
  double gamma_m = 0.0;
  double gamma_M = 0.0;
  double ratio_lower = 0.0;
  SolveStatus status = SolveStatus::Optimal;
  std::int64_t num_nodes = 0;
  std::int64_t num_cuts = 0;
  double wall_time = 0.0;
};

/// sum_i h_i uF_i / a_i(x) plus the r largest of sum_i h_i w_ij (1 - x_j) / a_i(x),
/// where a_i(x) = uL_i + sum_j w_ij x_j. x binary with sum x = p.
double surrogate_value(const Instance& inst, const LeaderSolution& x);

RatioConstants ratio_constants(const Instance& inst);

/// Minimizes surrogate_value over {x binary, sum x = p} by LP-based
/// branch-and-bound with lazily added tangent cuts, then certifies the true
/// leader share of the minimizer.
ApproxReport solve_approx(const Instance& inst, const ApproxConfig& config = {});

}  // namespace seqcflp
