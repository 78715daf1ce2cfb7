/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>

#include "seqcflp/model.hpp"
#include "seqcflp/separation.hpp"

namespace seqcflp {

struct OracleResult {
  double z_star = 0.0;
  LeaderSolution x_star;
  /// Follower responses evaluated.
  std::uint64_t evaluations = 0;
};

/// max over {sum x = p} of min over {sum y = r} of L(x, y) by full
/// enumeration. Ties go to the lexicographically smallest sorted site list.
/// Throws EnumerationBudgetExceeded when C(|J|,p) * C(|J|,r) * |I| > budget.
OracleResult solve_enumeration(const Instance& inst,
                               std::uint64_t budget = kDefaultEnumerationBudget);

/// min of leader_share_plus over follower sets of size r disjoint from x.
double inner_min_disjoint_plus(const Instance& inst, const LeaderSolution& x);

/// min of leader_share_max over all follower sets of size r.
double inner_min_max_form(const Instance& inst, const LeaderSolution& x);

}  // namespace seqcflp
