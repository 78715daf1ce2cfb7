/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string_view>
#include <vector>

#include "seqcflp/cuts.hpp"
#include "seqcflp/model.hpp"
#include "seqcflp/separation.hpp"

namespace seqcflp {

enum class CutConfig { SC, BI, SCBI };
enum class SeparationStrategy { Exact, Hybrid };
enum class SolveStatus { Optimal, TimeLimit, NodeLimit };

std::string_view to_string(CutConfig c);
std::string_view to_string(SeparationStrategy s);
std::string_view to_string(SolveStatus s);

struct SolverConfig {
  CutConfig cuts = CutConfig::SCBI;
  SeparationStrategy separation = SeparationStrategy::Hybrid;
  double tol = 1e-6;
  double time_limit = 3600.0;  // seconds
  std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
  /// Submodular cuts at fractional LP points, anchored at an approximate
  /// follower response.
  bool fractional_submodular = true;
  /// Bulge cuts at fractional LP points.
  bool fractional_bulge = false;
  /// Fractional cut rounds per node before branching.
  int max_fractional_rounds = 5;
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
  /// Progress line every this many nodes; 0 disables.
  std::int64_t log_interval = 0;
  std::ostream* log = nullptr;
  /// Keep the LP bound of every processed node in the report.
  bool trace_nodes = false;
  /// Receives a copy of every cut that enters the pool.
  std::vector<CutRow>* cut_sink = nullptr;
};

struct NodeState {
  std::vector<std::uint8_t> fixed_zero;
  std::vector<std::uint8_t> fixed_one;
  double bound = 1.0;
  int depth = 0;
  std::int64_t id = 0;
};

struct SolveReport {
  LeaderSolution best_x;
  bool has_incumbent = false;
  double z_best = 0.0;
  double z_bound = 1.0;
  double gap = 1.0;
  SolveStatus status = SolveStatus::Optimal;
  std::int64_t num_cuts_submodular = 0;
  std::int64_t num_cuts_bulge = 0;
  std::int64_t num_nodes = 0;
  std::int64_t num_lazy_rounds = 0;
  std::int64_t num_lp_solves = 0;
  double wall_time = 0.0;
  /// Incumbent value after lazy rounds 1, 3 and 10 (NaN: none yet).
  double incumbent_at_round[3] = {0.0, 0.0, 0.0};
  /// Gap_1, Gap_3, Gap_10 against the final optimum (NaN: no incumbent).
  double gap_trace[3] = {0.0, 0.0, 0.0};
  std::vector<double> node_bounds;

  std::int64_t num_cuts() const { return num_cuts_submodular + num_cuts_bulge; }
};

inline constexpr int kGapRounds[3] = {1, 3, 10};

/// Branch-and-cut over the single-level reformulation: maximize theta subject
/// to theta <= L(x, y) for every follower response y, sum x = p.
SolveReport solve_exact(const Instance& inst, const SolverConfig& config = {});

}  // namespace seqcflp
