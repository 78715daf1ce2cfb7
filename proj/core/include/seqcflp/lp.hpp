/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "seqcflp/cuts.hpp"

namespace seqcflp {

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct LpRow {
  std::vector<double> coeffs;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

/// Dense LP over box-bounded variables. Every variable needs at least one
/// finite bound.
struct LpProblem {
  std::vector<double> objective;
  bool maximize = true;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LpRow> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
};

enum class BasisState : std::uint8_t { Basic, AtLower, AtUpper };

/// Simplex basis: one state per variable and one per row activity.
struct LpBasis {
  std::vector<BasisState> vars;
  std::vector<BasisState> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
  /// Final basis, filled when the status is optimal.
  LpBasis basis;
};

struct LpOptions {
  double bound_tol = 1e-9;
  double row_tol = 1e-7;
  double pivot_tol = 1e-9;
  double dual_tol = 1e-10;
  /// 0 picks 50 * (rows + cols) + 1000.
  int max_iterations = 0;
  /// Rebuild the tableau from the original rows every this many pivots.
  int refactor_interval = 50;
};

/// Two-phase bounded-variable primal simplex on a dense condensed tableau.
/// Dantzig pricing, switching to Bland's rule after 5 * (rows + cols)
/// degenerate pivots. Deterministic.
LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

/// As above, starting from `start`. Rows past the end of start.rows begin
/// basic. A start that does not fit is rebalanced, and a singular one is
/// replaced by the slack basis.
LpSolution solve_lp(const LpProblem& problem, const LpBasis& start,
                    const LpOptions& options = {});

/// Node relaxation of the master problem over (x_1..x_|J|, theta):
/// maximize theta s.t. theta <= cut(x) for every cut, sum x = p,
/// lower <= x <= upper, 0 <= theta <= 1.
LpProblem make_master_lp(int num_sites, int p, std::span<const CutRow> cuts,
                         std::span<const double> lower,
                         std::span<const double> upper);

}  // namespace seqcflp
