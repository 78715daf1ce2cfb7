/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace seqcflp {

namespace {

void require_finite_nonnegative(std::span<const double> v, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0) {
      throw InstanceError(std::string(name) + "[" + std::to_string(i) +
                          "] must be finite and nonnegative");
    }
  }
}

void require_size(const LeaderSolution& x, const Instance& inst) {
  if (static_cast<int>(x.x.size()) != inst.num_sites()) {
    throw std::invalid_argument("leader vector has wrong dimension");
  }
}

void require_size(const FollowerSolution& y, const Instance& inst) {
  if (static_cast<int>(y.y.size()) != inst.num_sites()) {
    throw std::invalid_argument("follower vector has wrong dimension");
  }
}

double checked_ratio(double num, double den) {
  if (!(den > 0.0)) {
    throw std::domain_error("market share denominator is zero");
  }
  return num / den;
}

}  // namespace

Instance::Instance(std::vector<double> h, std::vector<double> w,
                   std::vector<double> uL, std::vector<double> uF, int p, int r)
    : h_(std::move(h)),
      w_(std::move(w)),
      uL_(std::move(uL)),
      uF_(std::move(uF)),
      p_(p),
      r_(r) {
  if (h_.empty()) throw InstanceError("instance needs at least one customer");
  if (w_.empty() || w_.size() % h_.size() != 0) {
    throw InstanceError("utility matrix size is not a multiple of |I|");
  }
  num_sites_ = static_cast<int>(w_.size() / h_.size());
  if (uL_.size() != h_.size() || uF_.size() != h_.size()) {
    throw InstanceError("uL and uF must have one entry per customer");
  }
  require_finite_nonnegative(h_, "h");
  require_finite_nonnegative(uL_, "uL");
  require_finite_nonnegative(uF_, "uF");
  const double total = std::accumulate(h_.begin(), h_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw InstanceError("demand shares h must sum to 1 (got " +
                        std::to_string(total) + ")");
  }
  for (std::size_t k = 0; k < w_.size(); ++k) {
    if (!std::isfinite(w_[k]) || !(w_[k] > 0.0)) {
      throw InstanceError("w[" + std::to_string(k / num_sites_) + "][" +
                          std::to_string(k % num_sites_) +
                          "] must be finite and strictly positive");
    }
  }
  if (p_ < 1) throw InstanceError("leader budget p must be positive");
  if (r_ < 1) throw InstanceError("follower budget r must be positive");
  if (p_ + r_ > num_sites_) {
    throw InstanceError("budgets violate p + r <= |J|");
  }
}

Instance Instance::from_rows(std::vector<double> h,
                             const std::vector<std::vector<double>>& w,
                             std::vector<double> uL, std::vector<double> uF,
                             int p, int r) {
  if (w.size() != h.size()) {
    throw InstanceError("utility matrix needs one row per customer");
  }
  std::vector<double> flat;
  const std::size_t cols = w.empty() ? 0 : w.front().size();
  for (const auto& row : w) {
    if (row.size() != cols) throw InstanceError("ragged utility matrix");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Instance(std::move(h), std::move(flat), std::move(uL), std::move(uF),
                  p, r);
}

Instance Instance::with_budgets(int p, int r) const {
  return Instance(h_, w_, uL_, uF_, p, r);
}

bool LeaderSolution::is_binary(double tol) const {
  for (double v : x) {
    if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
  }
  return true;
}

std::vector<int> LeaderSolution::sites() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] > 0.5) out.push_back(static_cast<int>(j));
  }
  return out;
}

double LeaderSolution::total() const {
  return std::accumulate(x.begin(), x.end(), 0.0);
}

LeaderSolution LeaderSolution::from_sites(int num_sites,
                                          std::span<const int> sites) {
  LeaderSolution s{std::vector<double>(num_sites, 0.0)};
  for (int j : sites) s.x.at(j) = 1.0;
  return s;
}

std::vector<int> FollowerSolution::sites() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j]) out.push_back(static_cast<int>(j));
  }
  return out;
}

int FollowerSolution::count() const {
  int c = 0;
  for (auto v : y) c += v ? 1 : 0;
  return c;
}

FollowerSolution FollowerSolution::from_sites(int num_sites,
                                              std::span<const int> sites) {
  FollowerSolution s{std::vector<std::uint8_t>(num_sites, 0)};
  for (int j : sites) s.y.at(j) = 1;
  return s;
}

double leader_share_plus(const Instance& inst, const LeaderSolution& x,
                         const FollowerSolution& y) {
  require_size(x, inst);
  require_size(y, inst);
  if (!x.is_binary()) throw std::invalid_argument("x must be binary");
  double total = 0.0;
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    double num = inst.uL(i);
    double den = inst.uL(i) + inst.uF(i);
    for (int j = 0; j < inst.num_sites(); ++j) {
      num += w[j] * x.x[j];
      den += w[j] * (x.x[j] + y.y[j]);
    }
    total += inst.h(i) * checked_ratio(num, den);
  }
  return total;
}

double leader_share_max(const Instance& inst, const LeaderSolution& x,
                        const FollowerSolution& y) {
  require_size(x, inst);
  require_size(y, inst);
  if (!x.is_binary()) throw std::invalid_argument("x must be binary");
  return detail::share_relaxed(inst, x.x, y.y);
}

double follower_share(const Instance& inst, const LeaderSolution& x,
                      const FollowerSolution& y) {
  require_size(x, inst);
  require_size(y, inst);
  if (!x.is_binary()) throw std::invalid_argument("x must be binary");
  for (int j = 0; j < inst.num_sites(); ++j) {
    if (x.x[j] > 0.5 && y.y[j]) {
      throw std::invalid_argument("leader and follower co-locate at site " +
                                  std::to_string(j));
    }
  }
  double total = 0.0;
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    double num = inst.uF(i);
    double den = inst.uL(i) + inst.uF(i);
    for (int j = 0; j < inst.num_sites(); ++j) {
      num += w[j] * y.y[j];
      den += w[j] * (x.x[j] + y.y[j]);
    }
    total += inst.h(i) * checked_ratio(num, den);
  }
  return total;
}

double bulge_value(const Instance& inst, std::span<const double> x,
                   const FollowerSolution& y) {
  require_size(y, inst);
  if (static_cast<int>(x.size()) != inst.num_sites()) {
    throw std::invalid_argument("leader vector has wrong dimension");
  }
  double total = 0.0;
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    double q = inst.uL(i);
    double p = inst.uL(i) + inst.uF(i);
    for (int j = 0; j < inst.num_sites(); ++j) {
      const double yj = y.y[j];
      q += w[j] * (-yj * x[j] * x[j] + (1.0 + yj) * x[j]);
      p += w[j] * ((1.0 - yj) * x[j] + yj);
    }
    total += inst.h(i) * checked_ratio(q, p);
  }
  return total;
}

std::vector<double> bulge_gradient(const Instance& inst,
                                   std::span<const double> x,
                                   const FollowerSolution& y) {
  require_size(y, inst);
  const int n = inst.num_sites();
  if (static_cast<int>(x.size()) != n) {
    throw std::invalid_argument("leader vector has wrong dimension");
  }
  std::vector<double> g(n, 0.0);
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    double q = inst.uL(i);
    double p = inst.uL(i) + inst.uF(i);
    for (int j = 0; j < n; ++j) {
      const double yj = y.y[j];
      q += w[j] * (-yj * x[j] * x[j] + (1.0 + yj) * x[j]);
      p += w[j] * ((1.0 - yj) * x[j] + yj);
    }
    if (!(p > 0.0)) throw std::domain_error("market share denominator is zero");
    const double hi = inst.h(i);
    for (int j = 0; j < n; ++j) {
      const double yj = y.y[j];
      g[j] += hi * (-w[j] * (1.0 - yj) * q / (p * p) +
                    w[j] * (-2.0 * yj * x[j] + 1.0 + yj) / p);
    }
  }
  return g;
}

namespace detail {

double share_relaxed(const Instance& inst, std::span<const double> x,
                     std::span<const std::uint8_t> y) {
  double total = 0.0;
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    double num = inst.uL(i);
    double den = inst.uL(i) + inst.uF(i);
    for (int j = 0; j < inst.num_sites(); ++j) {
      const double yj = y[j];
      num += w[j] * x[j];
      den += w[j] * (x[j] + yj - x[j] * yj);
    }
    total += inst.h(i) * checked_ratio(num, den);
  }
  return total;
}

}  // namespace detail

}  // namespace seqcflp
