/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/approx.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <queue>
#include <set>
#include <string>

#include "seqcflp/cuts.hpp"
#include "seqcflp/lp.hpp"

namespace seqcflp {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kIntegralityTol = 1e-6;
// Pool rows leave the LP after this many consecutive slack solves.
constexpr int kMaxIdleSolves = 5;
constexpr double kSlackTol = 1e-7;

// Aggregated surrogate terms at a (possibly fractional) leader point:
// base = sum_i h_i uF_i / a_i(x), c_j = sum_i h_i w_ij t_ij(x) with t_ij the
// perspective form of (1 - x_j) / a_i(x).
struct SurrogateParts {
  double base = 0.0;
  std::vector<double> c;
};

SurrogateParts surrogate_parts(const Instance& inst, std::span<const double> x) {
  const int n = inst.num_sites();
  SurrogateParts out;
  out.c.assign(n, 0.0);
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    double a = inst.uL(i);
    for (int j = 0; j < n; ++j) a += w[j] * x[j];
    if (!(a > 0.0)) throw std::domain_error("leader utility vanishes");
    const double hi = inst.h(i);
    out.base += hi * inst.uF(i) / a;
    for (int j = 0; j < n; ++j) {
      const double u = 1.0 - x[j];
      if (!(u > 0.0)) continue;
      const double d = inst.uL(i) * u + (a - inst.uL(i) - w[j] * x[j]);
      out.c[j] += hi * w[j] * u * u / d;
    }
  }
  return out;
}

double top_r_sum(const std::vector<double>& c, int r) {
  double s = 0.0;
  for (int j : top_r_indices(c, r)) s += c[j];
  return s;
}

struct ApproxNode {
  std::vector<std::uint8_t> fixed_zero;
  std::vector<std::uint8_t> fixed_one;
  double bound = 0.0;
  std::int64_t id = 0;
  // Parent's final basis; rows are the cardinality row, then the pool.
  std::shared_ptr<const LpBasis> warm;
};

struct ApproxNodeOrder {
  // Smallest bound first, FIFO among ties.
  bool operator()(const ApproxNode& a, const ApproxNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

class SurrogateBranchAndBound {
 public:
  SurrogateBranchAndBound(const Instance& inst, const ApproxConfig& cfg)
      : inst_(inst), cfg_(cfg), n_(inst.num_sites()), p_(inst.p()), r_(inst.r()) {
    nv_ = 2 * n_ + 2;
    base_lp_.objective.assign(nv_, 0.0);
    base_lp_.objective[eta()] = 1.0;
    base_lp_.maximize = false;
    base_lp_.lower.assign(nv_, 0.0);
    base_lp_.upper.assign(nv_, 1.0);

    // Variable ranges from the smallest reachable leader utility per customer.
    std::vector<double> c_max(n_, 0.0);
    double base_max = 0.0;
    std::vector<double> sorted;
    for (int i = 0; i < inst.num_customers(); ++i) {
      const auto w = inst.w_row(i);
      sorted.assign(w.begin(), w.end());
      std::sort(sorted.begin(), sorted.end());
      double a_min = inst.uL(i);
      for (int t = 0; t < p_; ++t) a_min += sorted[t];
      base_max += inst.h(i) * inst.uF(i) / a_min;
      for (int j = 0; j < n_; ++j) c_max[j] += inst.h(i) * w[j] / a_min;
    }
    for (int j = 0; j < n_; ++j) base_lp_.upper[n_ + j] = c_max[j];
    base_lp_.upper[base()] = base_max;
    base_lp_.upper[eta()] = base_max + top_r_sum(c_max, r_);

    LpRow card;
    card.coeffs.assign(nv_, 0.0);
    for (int j = 0; j < n_; ++j) card.coeffs[j] = 1.0;
    card.sense = RowSense::Equal;
    card.rhs = p_;
    base_lp_.rows.push_back(std::move(card));
  }

  ApproxReport run() {
    start_ = Clock::now();
    ApproxNode root;
    root.fixed_zero.assign(n_, 0);
    root.fixed_one.assign(n_, 0);
    open_.push(root);
    ApproxReport rep;
    rep.status = SolveStatus::Optimal;
    while (!open_.empty()) {
      if (elapsed() > cfg_.time_limit) {
        rep.status = SolveStatus::TimeLimit;
        break;
      }
      if (nodes_ >= cfg_.node_limit) {
        rep.status = SolveStatus::NodeLimit;
        break;
      }
      ApproxNode node = open_.top();
      open_.pop();
      if (has_best_ && node.bound >= best_ - prune_tol()) continue;
      ++nodes_;
      process(node);
    }
    if (!has_best_) {
      // Limits hit before any candidate: fall back to the first p sites.
      std::vector<double> xs(n_, 0.0);
      for (int j = 0; j < p_; ++j) xs[j] = 1.0;
      consider(xs);
    }
    rep.x_H = best_x_;
    rep.surrogate_value = best_;
    rep.num_nodes = nodes_;
    rep.num_cuts = static_cast<std::int64_t>(pool_.size());
    rep.wall_time = elapsed();
    return rep;
  }

 private:
  int base() const { return 2 * n_; }
  int eta() const { return 2 * n_ + 1; }
  double prune_tol() const { return cfg_.tol * std::max(1.0, std::abs(best_)); }

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  void consider(std::span<const double> xs) {
    LeaderSolution x{std::vector<double>(xs.begin(), xs.end())};
    const double f = surrogate_value(inst_, x);
    if (!has_best_ || f < best_ - 1e-15) {
      has_best_ = true;
      best_ = f;
      best_x_ = std::move(x);
    }
  }

  bool add_row(LpRow row, std::string key) {
    if (!keys_.insert(std::move(key)).second) return false;
    pool_.push_back(std::move(row));
    active_.push_back(1);
    idle_.push_back(0);
    return true;
  }

  static double row_excess(const LpRow& row, std::span<const double> x) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += row.coeffs[k] * x[k];
    return row.rhs - s;  // positive: a >= row is violated
  }

  // LP over the active rows, reviving pooled rows until none is violated, so
  // the result equals the LP over the whole pool.
  // `warm` holds the starting basis in pool indexing and receives the final one.
  LpSolution solve_relaxation(const ApproxNode& node, LpBasis& warm) {
    while (true) {
      LpProblem lp = base_lp_;
      for (int j = 0; j < n_; ++j) {
        if (node.fixed_one[j]) lp.lower[j] = 1.0;
        if (node.fixed_zero[j]) lp.upper[j] = 0.0;
      }
      std::vector<std::size_t> in_lp;
      for (std::size_t k = 0; k < pool_.size(); ++k) {
        if (!active_[k]) continue;
        lp.rows.push_back(pool_[k]);
        in_lp.push_back(k);
      }
      LpBasis start;
      if (!warm.vars.empty()) {
        start.vars = warm.vars;
        start.rows.reserve(lp.rows.size());
        start.rows.push_back(warm.rows[0]);
        for (std::size_t k : in_lp) {
          start.rows.push_back(k + 1 < warm.rows.size() ? warm.rows[k + 1]
                                                        : BasisState::Basic);
        }
      }
      LpSolution sol = solve_lp(lp, start);
      if (sol.status != LpStatus::Optimal) return sol;
      warm.vars = sol.basis.vars;
      warm.rows.assign(pool_.size() + 1, BasisState::Basic);
      warm.rows[0] = sol.basis.rows[0];
      for (std::size_t a = 0; a < in_lp.size(); ++a) {
        warm.rows[in_lp[a] + 1] = sol.basis.rows[a + 1];
      }
      int revived = 0;
      for (std::size_t k = 0; k < pool_.size(); ++k) {
        if (active_[k]) continue;
        const double tol = 1e-9 * std::max(1.0, std::abs(pool_[k].rhs));
        if (row_excess(pool_[k], sol.x) > tol) {
          active_[k] = 1;
          idle_[k] = 0;
          ++revived;
        }
      }
      if (revived > 0) continue;
      for (std::size_t k : in_lp) {
        if (-row_excess(pool_[k], sol.x) > kSlackTol) {
          if (++idle_[k] > kMaxIdleSolves) active_[k] = 0;
        } else {
          idle_[k] = 0;
        }
      }
      return sol;
    }
  }

  std::string anchor_key(char tag, std::span<const double> x, int extra = -1) {
    std::string key(1, tag);
    key += std::to_string(extra) + '|';
    char buf[32];
    for (double v : x) {
      std::snprintf(buf, sizeof buf, "%.9f,", v);
      key += buf;
    }
    return key;
  }

  // Tangent rows at x_hat for every aggregated term violated at the LP point.
  int add_tangents(std::span<const double> xh, const std::vector<double>& lp,
                   const SurrogateParts& truth, double abs_tol) {
    int added = 0;
    const int m = inst_.num_customers();
    if (truth.base > lp[base()] + abs_tol) {
      LpRow row;
      row.coeffs.assign(nv_, 0.0);
      row.coeffs[base()] = 1.0;
      row.sense = RowSense::GreaterEqual;
      for (int i = 0; i < m; ++i) {
        const double f = inst_.h(i) * inst_.uF(i);
        if (f == 0.0) continue;
        const CutRow s = surrogate_s_cut(inst_, i, xh);
        row.rhs += f * s.intercept;
        for (int k = 0; k < n_; ++k) row.coeffs[k] -= f * s.coeffs[k];
      }
      added += add_row(std::move(row), anchor_key('s', xh));
    }
    for (int j = 0; j < n_; ++j) {
      if (!(truth.c[j] > lp[n_ + j] + abs_tol)) continue;
      LpRow row;
      row.coeffs.assign(nv_, 0.0);
      row.coeffs[n_ + j] = 1.0;
      row.sense = RowSense::GreaterEqual;
      for (int i = 0; i < m; ++i) {
        const double f = inst_.h(i) * inst_.w(i, j);
        const CutRow t = surrogate_t_cut(inst_, i, j, xh);
        row.rhs += f * t.intercept;
        for (int k = 0; k < n_; ++k) row.coeffs[k] -= f * t.coeffs[k];
      }
      added += add_row(std::move(row), anchor_key('t', xh, j));
    }
    return added;
  }

  // eta >= base + sum_{j in Y} c_j for Y the r largest entries of c.
  int add_max_row(const std::vector<double>& c) {
    const auto top = top_r_indices(c, r_);
    LpRow row;
    row.coeffs.assign(nv_, 0.0);
    row.coeffs[eta()] = 1.0;
    row.coeffs[base()] = -1.0;
    std::string key = "y|";
    for (int j : top) {
      row.coeffs[n_ + j] = -1.0;
      key += std::to_string(j) + ',';
    }
    row.sense = RowSense::GreaterEqual;
    row.rhs = 0.0;
    return add_row(std::move(row), key);
  }

  void push_children(const ApproxNode& node, int var, double bound,
                     const LpBasis& warm) {
    auto shared = std::make_shared<const LpBasis>(warm);
    for (int one = 0; one < 2; ++one) {
      ApproxNode child = node;
      child.warm = shared;
      (one ? child.fixed_one : child.fixed_zero)[var] = 1;
      child.bound = bound;
      child.id = next_id_++;
      open_.push(std::move(child));
    }
  }

  void process(const ApproxNode& node) {
    int ones = 0;
    int zeros = 0;
    for (int j = 0; j < n_; ++j) {
      ones += node.fixed_one[j];
      zeros += node.fixed_zero[j];
    }
    if (ones > p_ || n_ - zeros < p_) return;
    if (ones == p_ || n_ - zeros == p_) {
      std::vector<double> xs(n_, 0.0);
      for (int j = 0; j < n_; ++j) {
        xs[j] = (ones == p_ ? node.fixed_one[j] : !node.fixed_zero[j]) ? 1.0 : 0.0;
      }
      consider(xs);
      return;
    }

    double bound = node.bound;
    int rounds = 0;
    LpBasis warm = node.warm ? *node.warm : LpBasis{};
    while (true) {
      if (elapsed() > cfg_.time_limit) {
        ApproxNode again = node;
        again.bound = bound;
        open_.push(std::move(again));
        return;
      }
      const auto sol = solve_relaxation(node, warm);
      if (sol.status == LpStatus::Infeasible) return;
      int free_var = -1;
      for (int j = 0; j < n_ && free_var < 0; ++j) {
        if (!node.fixed_zero[j] && !node.fixed_one[j]) free_var = j;
      }
      if (sol.status != LpStatus::Optimal) {
        push_children(node, free_var, bound, warm);
        return;
      }
      const double eta_hat = sol.x[eta()];
      bound = std::max(bound, eta_hat);
      if (has_best_ && eta_hat >= best_ - prune_tol()) return;

      std::vector<double> xh(sol.x.begin(), sol.x.begin() + n_);
      bool integral = true;
      for (double v : xh) {
        if (std::abs(v - std::round(v)) > kIntegralityTol) integral = false;
      }
      if (integral) {
        for (double& v : xh) v = std::round(v);
        consider(xh);
        const auto truth = surrogate_parts(inst_, xh);
        const double f = truth.base + top_r_sum(truth.c, r_);
        const double abs_tol = cfg_.tol * std::max(1.0, f);
        if (eta_hat >= f - abs_tol) return;
        int added = add_tangents(xh, sol.x, truth, abs_tol);
        added += add_max_row(truth.c);
        if (added == 0) {
          push_children(node, free_var, bound, warm);
          return;
        }
        continue;
      }

      // Fractional: round to the p largest entries for a candidate.
      {
        std::vector<double> xs(n_, 0.0);
        std::vector<double> score = xh;
        for (int j = 0; j < n_; ++j) {
          if (node.fixed_one[j]) score[j] = 2.0;
          if (node.fixed_zero[j]) score[j] = -1.0;
        }
        for (int j : top_r_indices(score, p_)) xs[j] = 1.0;
        consider(xs);
        if (has_best_ && eta_hat >= best_ - prune_tol()) return;
      }

      if (rounds < cfg_.max_fractional_rounds) {
        const auto truth = surrogate_parts(inst_, xh);
        const double abs_tol = 1e-7 * std::max(1.0, eta_hat);
        int added = add_tangents(xh, sol.x, truth, abs_tol);
        std::vector<double> c_hat(sol.x.begin() + n_, sol.x.begin() + 2 * n_);
        if (sol.x[base()] + top_r_sum(c_hat, r_) > eta_hat + abs_tol) {
          added += add_max_row(c_hat);
        }
        if (added > 0) {
          ++rounds;
          continue;
        }
      }

      int var = -1;
      double best = 2.0;
      for (int j = 0; j < n_; ++j) {
        if (node.fixed_zero[j] || node.fixed_one[j]) continue;
        const double s = std::abs(xh[j] - 0.5);
        if (s < best) {
          best = s;
          var = j;
        }
      }
      push_children(node, var, bound, warm);
      return;
    }
  }

  const Instance& inst_;
  const ApproxConfig& cfg_;
  const int n_;
  const int p_;
  const int r_;
  int nv_ = 0;
  LpProblem base_lp_;  // bounds and the cardinality row
  std::vector<LpRow> pool_;
  std::vector<std::uint8_t> active_;
  std::vector<int> idle_;
  std::set<std::string> keys_;
  std::priority_queue<ApproxNode, std::vector<ApproxNode>, ApproxNodeOrder> open_;
  std::int64_t next_id_ = 1;
  std::int64_t nodes_ = 0;
  bool has_best_ = false;
  double best_ = 0.0;
  LeaderSolution best_x_;
  Clock::time_point start_;
};

}  // namespace

double surrogate_value(const Instance& inst, const LeaderSolution& x) {
  if (static_cast<int>(x.x.size()) != inst.num_sites()) {
    throw std::invalid_argument("leader vector has wrong dimension");
  }
  if (!x.is_binary()) throw std::invalid_argument("x must be binary");
  const auto parts = surrogate_parts(inst, x.x);
  return parts.base + top_r_sum(parts.c, inst.r());
}

RatioConstants ratio_constants(const Instance& inst) {
  RatioConstants out;
  out.gamma_m = std::numeric_limits<double>::infinity();
  out.gamma_M = 0.0;
  const int n = inst.num_sites();
  std::vector<double> sorted;
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    sorted.assign(w.begin(), w.end());
    std::sort(sorted.begin(), sorted.end());
    double x_min = inst.uL(i);
    double x_max = inst.uL(i);
    for (int t = 0; t < inst.p(); ++t) {
      x_min += sorted[t];
      x_max += sorted[n - 1 - t];
    }
    double y_min = inst.uF(i);
    double y_max = inst.uF(i);
    for (int t = 0; t < inst.r(); ++t) {
      y_min += sorted[t];
      y_max += sorted[n - 1 - t];
    }
    out.gamma_m = std::min(out.gamma_m, 1.0 / (1.0 + y_max / x_min));
    out.gamma_M = std::max(out.gamma_M, 1.0 / (1.0 + y_min / x_max));
  }
  const double s = out.gamma_M + out.gamma_m;
  out.ratio_lower = 4.0 * out.gamma_M * out.gamma_m / (s * s);
  return out;
}

ApproxReport solve_approx(const Instance& inst, const ApproxConfig& config) {
  if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  SurrogateBranchAndBound bb(inst, config);
  ApproxReport rep = bb.run();
  const auto rc = ratio_constants(inst);
  rep.gamma_m = rc.gamma_m;
  rep.gamma_M = rc.gamma_M;
  rep.ratio_lower = rc.ratio_lower;
  rep.z_H = exact_best_response(inst, rep.x_H, config.enumeration_budget).value;
  rep.z_upper =
      std::min(1.0, 1.0 / ((1.0 + rep.surrogate_value) * rep.ratio_lower));
  return rep;
}

}  // namespace seqcflp
