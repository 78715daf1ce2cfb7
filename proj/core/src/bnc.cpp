/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/bnc.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <string>

#include "seqcflp/lp.hpp"

namespace seqcflp {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kIntegralityTol = 1e-6;

struct NodeOrder {
  bool operator()(const NodeState& a, const NodeState& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

std::string cut_key(const CutRow& row, std::span<const double> fractional_anchor) {
  std::string key(to_string(row.family));
  key += '|';
  for (int j : row.follower_sites) key += std::to_string(j) + ',';
  key += '|';
  for (int j : row.anchor_sites) key += std::to_string(j) + ',';
  if (!fractional_anchor.empty()) {
    key += '|';
    char buf[32];
    for (double v : fractional_anchor) {
      std::snprintf(buf, sizeof buf, "%.9f,", v);
      key += buf;
    }
  }
  return key;
}

class CutPool {
 public:
  bool add(CutRow row, std::span<const double> fractional_anchor = {}) {
    if (!keys_.insert(cut_key(row, fractional_anchor)).second) return false;
    rows_.push_back(std::move(row));
    return true;
  }
  const std::vector<CutRow>& rows() const { return rows_; }

 private:
  std::vector<CutRow> rows_;
  std::set<std::string> keys_;
};

bool uses_submodular(CutConfig c) { return c != CutConfig::BI; }
bool uses_bulge(CutConfig c) { return c != CutConfig::SC; }

class BranchAndCut {
 public:
  BranchAndCut(const Instance& inst, const SolverConfig& cfg)
      : inst_(inst), cfg_(cfg), n_(inst.num_sites()), p_(inst.p()) {}

  SolveReport run() {
    start_ = Clock::now();
    const double nan = std::nan("");
    for (double& v : rep_.incumbent_at_round) v = nan;

    NodeState root;
    root.fixed_zero.assign(n_, 0);
    root.fixed_one.assign(n_, 0);
    root.bound = 1.0;
    open_.push(root);

    bool limited = false;
    double interrupted_bound = -1.0;
    while (!open_.empty()) {
      if (elapsed() > cfg_.time_limit) {
        rep_.status = SolveStatus::TimeLimit;
        limited = true;
        break;
      }
      if (rep_.num_nodes >= cfg_.node_limit) {
        rep_.status = SolveStatus::NodeLimit;
        limited = true;
        break;
      }
      NodeState node = open_.top();
      open_.pop();
      if (rep_.has_incumbent && node.bound <= rep_.z_best + cfg_.tol) continue;
      ++rep_.num_nodes;
      const double left = process(node);
      if (left >= 0.0) {
        rep_.status = SolveStatus::TimeLimit;
        limited = true;
        interrupted_bound = left;
        break;
      }
      if (cfg_.log && cfg_.log_interval > 0 &&
          rep_.num_nodes % cfg_.log_interval == 0) {
        log_progress();
      }
    }

    if (limited) {
      double bound = std::max(interrupted_bound, rep_.has_incumbent ? rep_.z_best : 0.0);
      if (!open_.empty()) bound = std::max(bound, open_.top().bound);
      rep_.z_bound = bound;
    } else {
      rep_.status = SolveStatus::Optimal;
      rep_.z_bound = rep_.has_incumbent ? rep_.z_best : 0.0;
    }
    rep_.gap = rep_.has_incumbent
                   ? std::max(0.0, rep_.z_bound - rep_.z_best) /
                         std::max(rep_.z_bound, 1e-12)
                   : 1.0;

    const double ref = rep_.status == SolveStatus::Optimal ? rep_.z_best
                                                          : rep_.z_bound;
    for (int k = 0; k < 3; ++k) {
      if (rep_.num_lazy_rounds < kGapRounds[k]) {
        rep_.incumbent_at_round[k] = rep_.has_incumbent ? rep_.z_best : nan;
      }
      const double z = rep_.incumbent_at_round[k];
      rep_.gap_trace[k] = std::isnan(z) ? nan
                          : ref > 0.0   ? std::max(0.0, ref - z) / ref
                                        : 0.0;
    }
    rep_.wall_time = elapsed();
    if (cfg_.log) log_progress();
    return rep_;
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  void log_progress() {
    double bound = rep_.has_incumbent ? rep_.z_best : 0.0;
    if (!open_.empty()) bound = std::max(bound, open_.top().bound);
    const double best = rep_.has_incumbent ? rep_.z_best : 0.0;
    const double gap = bound > 0.0 ? std::max(0.0, bound - best) / bound : 0.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "node=%lld bound=%.6f best=%.6f gap=%.6f cuts=%lld",
                  static_cast<long long>(rep_.num_nodes), bound, best, gap,
                  static_cast<long long>(rep_.num_cuts()));
    *cfg_.log << buf << '\n';
  }

  void update_incumbent(const LeaderSolution& x, double value) {
    if (!rep_.has_incumbent || value > rep_.z_best + 1e-12) {
      rep_.has_incumbent = true;
      rep_.z_best = value;
      rep_.best_x = x;
    }
  }

  void evaluate_leaf(const std::vector<std::uint8_t>& ones) {
    LeaderSolution x{std::vector<double>(n_, 0.0)};
    for (int j = 0; j < n_; ++j) x.x[j] = ones[j] ? 1.0 : 0.0;
    const auto res = exact_best_response(inst_, x, cfg_.enumeration_budget);
    update_incumbent(x, res.value);
  }

  SeparationResult separate(const LeaderSolution& x, double theta) {
    if (cfg_.separation == SeparationStrategy::Exact) {
      return exact_separation(inst_, x, theta, cfg_.tol, cfg_.enumeration_budget);
    }
    return hybrid_separation(inst_, x, theta, cfg_.tol, cfg_.enumeration_budget);
  }

  bool add_cut(CutRow row, std::span<const double> fractional_anchor = {}) {
    const CutFamily fam = row.family;
    std::optional<CutRow> copy;
    if (cfg_.cut_sink) copy = row;
    if (!pool_.add(std::move(row), fractional_anchor)) return false;
    if (copy) cfg_.cut_sink->push_back(std::move(*copy));
    if (fam == CutFamily::Submodular) ++rep_.num_cuts_submodular;
    if (fam == CutFamily::Bulge) ++rep_.num_cuts_bulge;
    return true;
  }

  void record_round() {
    ++rep_.num_lazy_rounds;
    for (int k = 0; k < 3; ++k) {
      if (rep_.num_lazy_rounds == kGapRounds[k]) {
        rep_.incumbent_at_round[k] =
            rep_.has_incumbent ? rep_.z_best : std::nan("");
      }
    }
  }

  void push_child(const NodeState& parent, int var, bool one, double bound) {
    NodeState child = parent;
    (one ? child.fixed_one : child.fixed_zero)[var] = 1;
    child.bound = bound;
    child.depth = parent.depth + 1;
    child.id = next_id_++;
    open_.push(std::move(child));
  }

  void branch(const NodeState& node, int var, double bound) {
    push_child(node, var, false, bound);
    push_child(node, var, true, bound);
  }

  int first_free(const NodeState& node) const {
    for (int j = 0; j < n_; ++j) {
      if (!node.fixed_zero[j] && !node.fixed_one[j]) return j;
    }
    return -1;
  }

  // Returns a negative value when the node is finished, otherwise the node's
  // current bound after a time-limit interruption.
  double process(const NodeState& node) {
    int ones = 0;
    int zeros = 0;
    for (int j = 0; j < n_; ++j) {
      ones += node.fixed_one[j];
      zeros += node.fixed_zero[j];
    }
    if (ones > p_ || n_ - zeros < p_) return -1.0;
    if (ones == p_ || n_ - zeros == p_) {
      std::vector<std::uint8_t> chosen(n_, 0);
      for (int j = 0; j < n_; ++j) {
        chosen[j] = ones == p_ ? node.fixed_one[j] : !node.fixed_zero[j];
      }
      evaluate_leaf(chosen);
      if (cfg_.trace_nodes) rep_.node_bounds.push_back(node.bound);
      return -1.0;
    }

    std::vector<double> lower(n_, 0.0);
    std::vector<double> upper(n_, 1.0);
    for (int j = 0; j < n_; ++j) {
      if (node.fixed_one[j]) lower[j] = 1.0;
      if (node.fixed_zero[j]) upper[j] = 0.0;
    }

    double bound = node.bound;
    int fractional_rounds = 0;
    while (true) {
      if (elapsed() > cfg_.time_limit) return bound;
      const auto lp = make_master_lp(n_, p_, pool_.rows(), lower, upper);
      const auto sol = solve_lp(lp);
      ++rep_.num_lp_solves;
      if (sol.status == LpStatus::Infeasible) return -1.0;
      if (sol.status != LpStatus::Optimal) {
        branch(node, first_free(node), bound);
        return -1.0;
      }
      const double theta = sol.x[n_];
      bound = std::min(bound, theta);
      if (cfg_.trace_nodes) rep_.node_bounds.push_back(theta);
      if (rep_.has_incumbent && theta <= rep_.z_best + cfg_.tol) return -1.0;

      std::vector<double> xh(sol.x.begin(), sol.x.begin() + n_);
      bool integral = true;
      for (double v : xh) {
        if (std::abs(v - std::round(v)) > kIntegralityTol) integral = false;
      }

      if (integral) {
        LeaderSolution xb{std::vector<double>(n_)};
        for (int j = 0; j < n_; ++j) xb.x[j] = std::round(xh[j]);
        auto sep = separate(xb, theta);
        if (sep.mode == SeparationMode::Exact) update_incumbent(xb, sep.value);
        record_round();
        if (!sep.violated) return -1.0;

        const auto y_sites = sep.y.sites();
        int added = 0;
        if (uses_submodular(cfg_.cuts)) {
          added += add_cut(submodular_cut(inst_, xb.sites(), y_sites));
        }
        if (uses_bulge(cfg_.cuts)) {
          CutRow row = bulge_cut(inst_, xb.x, sep.y);
          row.anchor_sites = xb.sites();
          added += add_cut(std::move(row));
        }
        if (added == 0) {
          // The pool already holds these cuts and the LP tolerance keeps the
          // point alive: settle it by branching.
          if (sep.mode != SeparationMode::Exact) {
            update_incumbent(
                xb, exact_best_response(inst_, xb, cfg_.enumeration_budget).value);
          }
          branch(node, first_free(node), bound);
          return -1.0;
        }
        continue;
      }

      if (fractional_rounds < cfg_.max_fractional_rounds) {
        const bool sc = cfg_.fractional_submodular && uses_submodular(cfg_.cuts);
        const bool bi = cfg_.fractional_bulge && uses_bulge(cfg_.cuts);
        int added = 0;
        if (sc || bi) {
          const auto y = approx_separation(inst_, xh).y;
          if (sc) {
            FollowerSetShare share(inst_, y.sites());
            const auto anchor = select_submodular_anchor(share, xh);
            CutRow row = share.cut(anchor);
            if (row.evaluate(xh) < theta - cfg_.tol) added += add_cut(std::move(row));
          }
          if (bi) {
            CutRow row = bulge_cut(inst_, xh, y);
            if (row.evaluate(xh) < theta - cfg_.tol) {
              added += add_cut(std::move(row), xh);
            }
          }
        }
        if (added > 0) {
          ++fractional_rounds;
          continue;
        }
      }

      int var = -1;
      double best = 2.0;
      for (int j = 0; j < n_; ++j) {
        if (node.fixed_zero[j] || node.fixed_one[j]) continue;
        const double score = std::abs(xh[j] - 0.5);
        if (score < best) {
          best = score;
          var = j;
        }
      }
      branch(node, var, bound);
      return -1.0;
    }
  }

  const Instance& inst_;
  const SolverConfig& cfg_;
  const int n_;
  const int p_;
  Clock::time_point start_;
  SolveReport rep_;
  CutPool pool_;
  std::priority_queue<NodeState, std::vector<NodeState>, NodeOrder> open_;
  std::int64_t next_id_ = 1;
};

}  // namespace

std::string_view to_string(CutConfig c) {
  switch (c) {
    case CutConfig::SC: return "SC";
    case CutConfig::BI: return "BI";
    case CutConfig::SCBI: return "SCBI";
  }
  return "unknown";
}

std::string_view to_string(SeparationStrategy s) {
  return s == SeparationStrategy::Exact ? "exact" : "approx";
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::TimeLimit: return "time-limit";
    case SolveStatus::NodeLimit: return "node-limit";
  }
  return "unknown";
}

SolveReport solve_exact(const Instance& inst, const SolverConfig& config) {
  if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  BranchAndCut bc(inst, config);
  return bc.run();
}

}  // namespace seqcflp
