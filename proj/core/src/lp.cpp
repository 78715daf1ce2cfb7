/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace seqcflp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStepEps = 1e-12;

// Condensed tableau: basic = T * nonbasic, for variables z = (x, s) with
// row activities s = A x. All row constraints live in the bounds of s.
class Tableau {
 public:
  Tableau(const LpProblem& prob, const LpOptions& opt) : opt_(opt) {
    n_ = prob.num_vars();
    m_ = static_cast<int>(prob.rows.size());
    if (static_cast<int>(prob.lower.size()) != n_ ||
        static_cast<int>(prob.upper.size()) != n_) {
      throw std::invalid_argument("lp bounds have wrong dimension");
    }
    const int total = n_ + m_;
    lb_.assign(total, 0.0);
    ub_.assign(total, 0.0);
    val_.assign(total, 0.0);
    cost_.assign(total, 0.0);
    a_.assign(static_cast<std::size_t>(m_) * n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lb_[j] = prob.lower[j];
      ub_[j] = prob.upper[j];
      if (lb_[j] > ub_[j]) throw std::invalid_argument("lp bounds cross");
      if (std::isfinite(lb_[j])) {
        val_[j] = lb_[j];
      } else if (std::isfinite(ub_[j])) {
        val_[j] = ub_[j];
      } else {
        throw std::invalid_argument("lp variable without a finite bound");
      }
      cost_[j] = prob.maximize ? -prob.objective[j] : prob.objective[j];
    }
    for (int i = 0; i < m_; ++i) {
      const auto& row = prob.rows[i];
      if (static_cast<int>(row.coeffs.size()) != n_) {
        throw std::invalid_argument("lp row has wrong dimension");
      }
      double scale = 0.0;
      for (double v : row.coeffs) scale = std::max(scale, std::abs(v));
      scale = scale > 0.0 ? 1.0 / scale : 1.0;
      for (int j = 0; j < n_; ++j) a_[idx(i, j)] = row.coeffs[j] * scale;
      const double rhs = row.rhs * scale;
      const int s = n_ + i;
      lb_[s] = row.sense == RowSense::LessEqual ? -kInf : rhs;
      ub_[s] = row.sense == RowSense::GreaterEqual ? kInf : rhs;
    }
    basic_.resize(m_);
    nonbasic_.resize(n_);
    pos_.resize(total);
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      pos_[j] = -1 - j;
    }
    for (int i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      pos_[n_ + i] = i;
    }
    t_ = a_;
    max_iter_ = opt.max_iterations > 0 ? opt.max_iterations
                                       : 50 * (m_ + n_) + 1000;
    degenerate_limit_ = 5 * (m_ + n_);
  }

  // Installs a starting basis; keeps the slack basis when it is singular.
  void install(const LpBasis& b) {
    if (static_cast<int>(b.vars.size()) != n_) return;
    std::vector<int> kcols, rrows;
    for (int j = 0; j < n_; ++j) {
      if (b.vars[j] == BasisState::Basic) kcols.push_back(j);
    }
    const int given = std::min<int>(m_, static_cast<int>(b.rows.size()));
    for (int i = 0; i < given; ++i) {
      if (b.rows[i] != BasisState::Basic) rrows.push_back(i);
    }
    std::vector<BasisState> vs(b.vars.begin(), b.vars.end());
    while (kcols.size() > rrows.size()) {
      vs[kcols.back()] = BasisState::AtLower;
      kcols.pop_back();
    }
    std::vector<char> row_nb(m_, 0);
    for (std::size_t a = 0; a < rrows.size(); ++a) row_nb[rrows[a]] = a < kcols.size();

    const auto old_basic = basic_;
    const auto old_nonbasic = nonbasic_;
    const auto old_val = val_;
    basic_.clear();
    nonbasic_.clear();
    auto place = [&](int v, BasisState st) {
      const bool upper = st == BasisState::AtUpper ? std::isfinite(ub_[v])
                                                   : !std::isfinite(lb_[v]);
      val_[v] = upper ? ub_[v] : lb_[v];
    };
    for (int j = 0; j < n_; ++j) {
      if (vs[j] == BasisState::Basic) {
        basic_.push_back(j);
      } else {
        nonbasic_.push_back(j);
        place(j, vs[j]);
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (row_nb[i]) {
        nonbasic_.push_back(n_ + i);
        place(n_ + i, b.rows[i]);
      } else {
        basic_.push_back(n_ + i);
      }
    }
    sync_positions();
    if (!refactor()) {
      basic_ = old_basic;
      nonbasic_ = old_nonbasic;
      val_ = old_val;
      sync_positions();
      t_ = a_;
    }
  }

  LpSolution run() {
    LpSolution sol;
    compute_basics();
    for (int attempt = 0; attempt < 4; ++attempt) {
      if (!phase(1)) return finish(sol, LpStatus::IterationLimit);
      if (infeasibility() > 0.0) {
        refactor();
        compute_basics();
        if (infeasibility() > 0.0) {
          if (!phase(1)) return finish(sol, LpStatus::IterationLimit);
          if (infeasibility() > 0.0) return finish(sol, LpStatus::Infeasible);
        }
      }
      const int rc = phase(2);
      if (rc == 0) return finish(sol, LpStatus::IterationLimit);
      if (rc < 0) return finish(sol, LpStatus::Unbounded);
      refactor();
      compute_basics();
      if (infeasibility() == 0.0) return finish(sol, LpStatus::Optimal);
    }
    return finish(sol, LpStatus::IterationLimit);
  }

 private:
  void sync_positions() {
    for (int r = 0; r < m_; ++r) pos_[basic_[r]] = r;
    for (int c = 0; c < n_; ++c) pos_[nonbasic_[c]] = -1 - c;
  }

  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * n_ + c;
  }

  double tol_for(int /*v*/) const { return opt_.bound_tol; }

  void compute_basics() {
    for (int r = 0; r < m_; ++r) {
      const double* row = &t_[idx(r, 0)];
      double s = 0.0;
      for (int c = 0; c < n_; ++c) s += row[c] * val_[nonbasic_[c]];
      val_[basic_[r]] = s;
    }
  }

  // Sum of bound violations beyond tolerance over basic variables.
  double infeasibility() const {
    double total = 0.0;
    for (int r = 0; r < m_; ++r) {
      const int v = basic_[r];
      const double z = val_[v];
      if (z < lb_[v] - tol_for(v)) total += lb_[v] - z;
      if (z > ub_[v] + tol_for(v)) total += z - ub_[v];
    }
    return total;
  }

  // Returns 1 on optimal / feasible, 0 on iteration limit, -1 on unbounded.
  int phase(int which) {
    std::vector<double> sigma(m_, 0.0);
    std::vector<double> d(n_, 0.0);
    while (true) {
      if (iterations_ >= max_iter_) return 0;
      if (since_refactor_ >= opt_.refactor_interval) {
        refactor();
        compute_basics();
      }

      bool any = false;
      for (int r = 0; r < m_; ++r) {
        if (which == 1) {
          const int v = basic_[r];
          const double z = val_[v];
          sigma[r] = z < lb_[v] - tol_for(v)   ? -1.0
                     : z > ub_[v] + tol_for(v) ? 1.0
                                               : 0.0;
        } else {
          sigma[r] = cost_[basic_[r]];
        }
        any = any || sigma[r] != 0.0;
      }
      if (which == 1 && !any) return 1;

      for (int c = 0; c < n_; ++c) d[c] = which == 2 ? cost_[nonbasic_[c]] : 0.0;
      if (any) {
        for (int r = 0; r < m_; ++r) {
          if (sigma[r] == 0.0) continue;
          const double* row = &t_[idx(r, 0)];
          for (int c = 0; c < n_; ++c) d[c] += sigma[r] * row[c];
        }
      }

      int enter = -1;
      double enter_dir = 0.0;
      double best_score = 0.0;
      for (int c = 0; c < n_; ++c) {
        const int v = nonbasic_[c];
        if (lb_[v] == ub_[v]) continue;
        double dir = 0.0;
        if (val_[v] == lb_[v] && d[c] < -opt_.dual_tol) dir = 1.0;
        if (val_[v] == ub_[v] && d[c] > opt_.dual_tol) dir = -1.0;
        if (dir == 0.0) continue;
        if (bland_) {
          if (enter < 0 || v < nonbasic_[enter]) {
            enter = c;
            enter_dir = dir;
          }
        } else if (std::abs(d[c]) > best_score) {
          best_score = std::abs(d[c]);
          enter = c;
          enter_dir = dir;
        }
      }
      if (enter < 0) return 1;

      // Ratio test.
      const int ev = nonbasic_[enter];
      double step = ub_[ev] - lb_[ev];
      int leave = -1;
      double leave_value = 0.0;
      double leave_pivot = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double a = t_[idx(r, enter)];
        if (std::abs(a) <= opt_.pivot_tol) continue;
        const double rate = enter_dir * a;
        const int v = basic_[r];
        const double z = val_[v];
        const double tol = tol_for(v);
        double limit = kInf;
        double target = 0.0;
        if (rate > 0.0) {
          if (z < lb_[v] - tol) {
            if (which == 1) {
              limit = (lb_[v] - z) / rate;
              target = lb_[v];
            }
          } else if (z <= ub_[v] + tol && std::isfinite(ub_[v])) {
            limit = std::max(0.0, (ub_[v] - z) / rate);
            target = ub_[v];
          }
        } else {
          if (z > ub_[v] + tol) {
            if (which == 1) {
              limit = (z - ub_[v]) / -rate;
              target = ub_[v];
            }
          } else if (z >= lb_[v] - tol && std::isfinite(lb_[v])) {
            limit = std::max(0.0, (z - lb_[v]) / -rate);
            target = lb_[v];
          }
        }
        if (!std::isfinite(limit)) continue;
        bool take = false;
        if (limit < step - kStepEps) {
          take = true;
        } else if (leave >= 0 && limit <= step + kStepEps) {
          take = bland_ ? v < basic_[leave] : std::abs(a) > leave_pivot;
        }
        if (take) {
          step = std::min(step, limit);
          leave = r;
          leave_value = target;
          leave_pivot = std::abs(a);
        }
      }

      if (leave < 0 && !std::isfinite(step)) {
        if (which == 2) return -1;
        // Cannot happen for a bounded-below objective; stop defensively.
        return 1;
      }

      ++iterations_;
      if (step <= kStepEps) {
        if (++degenerate_ > degenerate_limit_) bland_ = true;
      }

      if (leave < 0) {
        val_[ev] = enter_dir > 0.0 ? ub_[ev] : lb_[ev];
        compute_basics();
        continue;
      }

      const int lv = basic_[leave];
      val_[ev] += enter_dir * step;
      pivot(leave, enter);
      val_[lv] = leave_value;
      compute_basics();
    }
  }

  void pivot(int r, int c) {
    const double a = t_[idx(r, c)];
    double* prow = &t_[idx(r, 0)];
    for (int k = 0; k < n_; ++k) prow[k] = k == c ? 1.0 / a : -prow[k] / a;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &t_[idx(i, 0)];
      const double f = row[c];
      if (f == 0.0) continue;
      for (int k = 0; k < n_; ++k) {
        row[k] = k == c ? f * prow[c] : row[k] + f * prow[k];
      }
    }
    const int ev = nonbasic_[c];
    const int lv = basic_[r];
    basic_[r] = ev;
    nonbasic_[c] = lv;
    pos_[ev] = r;
    pos_[lv] = -1 - c;
    ++since_refactor_;
  }

  // Rebuild T from the scaled rows for the current basis. False when the
  // basis matrix is singular, leaving T untouched.
  bool refactor() {
    since_refactor_ = 0;
    std::vector<int> kcols;  // basic structurals
    std::vector<int> rrows;  // rows whose activity is nonbasic
    for (int r = 0; r < m_; ++r) {
      if (basic_[r] < n_) kcols.push_back(basic_[r]);
    }
    for (int c = 0; c < n_; ++c) {
      if (nonbasic_[c] >= n_) rrows.push_back(nonbasic_[c] - n_);
    }
    const int k = static_cast<int>(kcols.size());
    if (static_cast<int>(rrows.size()) != k) return false;

    // LU of A[R, K] with partial pivoting.
    std::vector<double> lu(static_cast<std::size_t>(k) * k);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) lu[a * k + b] = a_[idx(rrows[a], kcols[b])];
    }
    std::vector<int> perm(k);
    for (int a = 0; a < k; ++a) perm[a] = a;
    for (int col = 0; col < k; ++col) {
      int piv = col;
      for (int a = col + 1; a < k; ++a) {
        if (std::abs(lu[a * k + col]) > std::abs(lu[piv * k + col])) piv = a;
      }
      if (std::abs(lu[piv * k + col]) < 1e-13) return false;
      if (piv != col) {
        for (int b = 0; b < k; ++b) std::swap(lu[piv * k + b], lu[col * k + b]);
        std::swap(perm[piv], perm[col]);
      }
      for (int a = col + 1; a < k; ++a) {
        const double f = lu[a * k + col] / lu[col * k + col];
        lu[a * k + col] = f;
        for (int b = col + 1; b < k; ++b) lu[a * k + b] -= f * lu[col * k + b];
      }
    }
    auto solve = [&](std::vector<double>& rhs) {
      std::vector<double> y(k);
      for (int a = 0; a < k; ++a) y[a] = rhs[perm[a]];
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < a; ++b) y[a] -= lu[a * k + b] * y[b];
      }
      for (int a = k - 1; a >= 0; --a) {
        for (int b = a + 1; b < k; ++b) y[a] -= lu[a * k + b] * y[b];
        y[a] /= lu[a * k + a];
      }
      rhs.swap(y);
    };

    std::vector<int> rpos(m_, -1);
    for (int a = 0; a < k; ++a) rpos[rrows[a]] = a;
    std::vector<int> kpos(n_, -1);
    for (int b = 0; b < k; ++b) kpos[kcols[b]] = b;

    // X (k x n): x_K = X * z_N.
    std::vector<double> x(static_cast<std::size_t>(k) * n_, 0.0);
    std::vector<double> rhs(k);
    for (int c = 0; c < n_; ++c) {
      const int v = nonbasic_[c];
      if (v < n_) {
        for (int a = 0; a < k; ++a) rhs[a] = -a_[idx(rrows[a], v)];
      } else {
        std::fill(rhs.begin(), rhs.end(), 0.0);
        rhs[rpos[v - n_]] = 1.0;
      }
      if (k > 0) solve(rhs);
      for (int b = 0; b < k; ++b) x[static_cast<std::size_t>(b) * n_ + c] = rhs[b];
    }

    for (int r = 0; r < m_; ++r) {
      double* row = &t_[idx(r, 0)];
      const int v = basic_[r];
      if (v < n_) {
        const double* src = &x[static_cast<std::size_t>(kpos[v]) * n_];
        std::copy(src, src + n_, row);
        continue;
      }
      const int i = v - n_;
      for (int c = 0; c < n_; ++c) {
        const int nv = nonbasic_[c];
        row[c] = nv < n_ ? a_[idx(i, nv)] : 0.0;
      }
      for (int b = 0; b < k; ++b) {
        const double coef = a_[idx(i, kcols[b])];
        if (coef == 0.0) continue;
        const double* src = &x[static_cast<std::size_t>(b) * n_];
        for (int c = 0; c < n_; ++c) row[c] += coef * src[c];
      }
    }
    return true;
  }

  LpSolution& finish(LpSolution& sol, LpStatus status) {
    sol.status = status;
    sol.iterations = iterations_;
    sol.x.assign(val_.begin(), val_.begin() + n_);
    sol.objective = 0.0;
    for (int j = 0; j < n_; ++j) {
      if (status == LpStatus::Optimal) {
        sol.x[j] = std::clamp(sol.x[j], lb_[j], ub_[j]);
      }
      sol.objective -= cost_[j] * sol.x[j];
    }
    if (!maximize_sign_) sol.objective = -sol.objective;
    if (status == LpStatus::Optimal) {
      auto state = [&](int v) {
        if (pos_[v] >= 0) return BasisState::Basic;
        return val_[v] == lb_[v] ? BasisState::AtLower : BasisState::AtUpper;
      };
      sol.basis.vars.resize(n_);
      sol.basis.rows.resize(m_);
      for (int j = 0; j < n_; ++j) sol.basis.vars[j] = state(j);
      for (int i = 0; i < m_; ++i) sol.basis.rows[i] = state(n_ + i);
    }
    return sol;
  }

 public:
  void set_maximize(bool m) { maximize_sign_ = m; }

 private:
  const LpOptions& opt_;
  int n_ = 0;
  int m_ = 0;
  std::vector<double> a_;
  std::vector<double> t_;
  std::vector<double> lb_, ub_, val_, cost_;
  std::vector<int> basic_, nonbasic_, pos_;
  int iterations_ = 0;
  int max_iter_ = 0;
  int degenerate_ = 0;
  int degenerate_limit_ = 0;
  int since_refactor_ = 0;
  bool bland_ = false;
  bool maximize_sign_ = true;
};

}  // namespace

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options) {
  if (static_cast<int>(problem.objective.size()) != problem.num_vars()) {
    throw std::invalid_argument("lp objective has wrong dimension");
  }
  Tableau tab(problem, options);
  tab.set_maximize(problem.maximize);
  return tab.run();
}

LpSolution solve_lp(const LpProblem& problem, const LpBasis& start,
                    const LpOptions& options) {
  if (static_cast<int>(problem.objective.size()) != problem.num_vars()) {
    throw std::invalid_argument("lp objective has wrong dimension");
  }
  Tableau tab(problem, options);
  tab.set_maximize(problem.maximize);
  tab.install(start);
  return tab.run();
}

LpProblem make_master_lp(int num_sites, int p, std::span<const CutRow> cuts,
                         std::span<const double> lower,
                         std::span<const double> upper) {
  const int n = num_sites + 1;
  LpProblem lp;
  lp.objective.assign(n, 0.0);
  lp.objective[num_sites] = 1.0;
  lp.maximize = true;
  lp.lower.assign(lower.begin(), lower.end());
  lp.upper.assign(upper.begin(), upper.end());
  lp.lower.push_back(0.0);
  lp.upper.push_back(1.0);

  LpRow card;
  card.coeffs.assign(n, 1.0);
  card.coeffs[num_sites] = 0.0;
  card.sense = RowSense::Equal;
  card.rhs = p;
  lp.rows.push_back(std::move(card));

  for (const auto& cut : cuts) {
    LpRow row;
    row.coeffs.resize(n);
    for (int j = 0; j < num_sites; ++j) row.coeffs[j] = -cut.coeffs[j];
    row.coeffs[num_sites] = 1.0;
    row.sense = RowSense::LessEqual;
    row.rhs = cut.intercept;
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

}  // namespace seqcflp
