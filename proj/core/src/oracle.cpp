/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/oracle.hpp"

#include <functional>
#include <limits>
#include <string>

namespace seqcflp {

namespace {

constexpr double kTieEps = 1e-13;

// Visits every k-subset of {0..n-1} in lexicographic order. The callback
// returns false to stop early.
void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> c(k);
  for (int t = 0; t < k; ++t) c[t] = t;
  while (true) {
    if (!fn(c)) return;
    int t = k - 1;
    while (t >= 0 && c[t] == n - k + t) --t;
    if (t < 0) return;
    ++c[t];
    for (int u = t + 1; u < k; ++u) c[u] = c[u - 1] + 1;
  }
}

class Enumerator {
 public:
  explicit Enumerator(const Instance& inst)
      : inst_(inst), n_(inst.num_sites()), m_(inst.num_customers()),
        p_(inst.p()), r_(inst.r()) {
    num_.assign(p_ + 1, std::vector<double>(m_, 0.0));
    den_.assign(r_ + 1, std::vector<double>(m_, 0.0));
    for (int i = 0; i < m_; ++i) num_[0][i] = inst.uL(i);
    chosen_.assign(p_, 0);
    mask_.assign(n_, 0);
  }

  OracleResult run() {
    leader(0, 0);
    OracleResult out;
    out.z_star = best_;
    out.x_star = LeaderSolution::from_sites(n_, best_x_);
    out.evaluations = evaluations_;
    return out;
  }

 private:
  void leader(int depth, int start) {
    if (depth == p_) {
      evaluate_leader();
      return;
    }
    for (int j = start; j <= n_ - (p_ - depth); ++j) {
      for (int i = 0; i < m_; ++i) num_[depth + 1][i] = num_[depth][i] + inst_.w(i, j);
      chosen_[depth] = j;
      mask_[j] = 1;
      leader(depth + 1, j + 1);
      mask_[j] = 0;
    }
  }

  void evaluate_leader() {
    const auto& a = num_[p_];
    for (int i = 0; i < m_; ++i) den_[0][i] = a[i] + inst_.uF(i);
    inner_min_ = std::numeric_limits<double>::infinity();
    stop_ = false;
    follower(0, 0);
    if (!stop_ && (best_x_.empty() || inner_min_ > best_ + kTieEps)) {
      best_ = inner_min_;
      best_x_ = chosen_;
    }
  }

  // Stops as soon as this leader set provably cannot beat the incumbent.
  void follower(int depth, int start) {
    if (stop_) return;
    if (depth == r_) {
      ++evaluations_;
      const auto& a = num_[p_];
      const auto& d = den_[r_];
      double v = 0.0;
      for (int i = 0; i < m_; ++i) v += inst_.h(i) * (a[i] / d[i]);
      if (v < inner_min_) inner_min_ = v;
      if (!best_x_.empty() && inner_min_ <= best_ + kTieEps) stop_ = true;
      return;
    }
    for (int j = start; j <= n_ - (r_ - depth) && !stop_; ++j) {
      const double keep = mask_[j] ? 0.0 : 1.0;
      for (int i = 0; i < m_; ++i) {
        den_[depth + 1][i] = den_[depth][i] + keep * inst_.w(i, j);
      }
      follower(depth + 1, j + 1);
    }
  }

  const Instance& inst_;
  const int n_, m_, p_, r_;
  std::vector<std::vector<double>> num_;
  std::vector<std::vector<double>> den_;
  std::vector<int> chosen_;
  std::vector<std::uint8_t> mask_;
  std::vector<int> best_x_;
  double best_ = -std::numeric_limits<double>::infinity();
  double inner_min_ = 0.0;
  bool stop_ = false;
  std::uint64_t evaluations_ = 0;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

}  // namespace

OracleResult solve_enumeration(const Instance& inst, std::uint64_t budget) {
  const int n = inst.num_sites();
  const std::uint64_t work =
      saturating_mul(saturating_mul(binomial(n, inst.p()), binomial(n, inst.r())),
                     static_cast<std::uint64_t>(inst.num_customers()));
  if (work > budget) {
    throw EnumerationBudgetExceeded(
        "enumeration needs C(" + std::to_string(n) + "," + std::to_string(inst.p()) +
        ")*C(" + std::to_string(n) + "," + std::to_string(inst.r()) +
        ")*|I| evaluations, over budget");
  }
  Enumerator e(inst);
  return e.run();
}

double inner_min_disjoint_plus(const Instance& inst, const LeaderSolution& x) {
  const int n = inst.num_sites();
  double best = std::numeric_limits<double>::infinity();
  for_each_subset(n, inst.r(), [&](const std::vector<int>& ys) {
    for (int j : ys) {
      if (x.x[j] > 0.5) return true;
    }
    best = std::min(best, leader_share_plus(inst, x, FollowerSolution::from_sites(n, ys)));
    return true;
  });
  return best;
}

double inner_min_max_form(const Instance& inst, const LeaderSolution& x) {
  const int n = inst.num_sites();
  double best = std::numeric_limits<double>::infinity();
  for_each_subset(n, inst.r(), [&](const std::vector<int>& ys) {
    best = std::min(best, leader_share_max(inst, x, FollowerSolution::from_sites(n, ys)));
    return true;
  });
  return best;
}

}  // namespace seqcflp
