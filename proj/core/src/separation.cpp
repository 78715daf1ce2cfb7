/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/separation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace seqcflp {

namespace {

// Replacement threshold for the running minimum; keeps the first
// (lexicographically smallest) subset among numerical ties.
constexpr double kTieEps = 1e-13;

struct ResponseSearch {
  const Instance& inst;
  std::vector<double> num;     // per customer, fixed
  std::vector<double> add;     // w_ij (1 - x_j), row-major
  std::vector<std::vector<double>> den;  // per depth
  std::vector<int> chosen;
  std::vector<int> best;
  double best_value = std::numeric_limits<double>::infinity();
  int n;
  int r;

  double leaf_value(const std::vector<double>& d) const {
    double v = 0.0;
    for (int i = 0; i < inst.num_customers(); ++i) {
      v += inst.h(i) * (d[i] > 0.0 ? num[i] / d[i] : 0.0);
    }
    return v;
  }

  void run(int depth, int start) {
    if (depth == r) {
      const double v = leaf_value(den[depth]);
      if (v < best_value - kTieEps) {
        best_value = v;
        best = chosen;
      }
      return;
    }
    const int m = inst.num_customers();
    for (int j = start; j <= n - (r - depth); ++j) {
      auto& next = den[depth + 1];
      const auto& cur = den[depth];
      for (int i = 0; i < m; ++i) {
        next[i] = cur[i] + add[static_cast<std::size_t>(i) * n + j];
      }
      chosen[depth] = j;
      run(depth + 1, j + 1);
    }
  }
};

}  // namespace

double ApproxCoefficients::bound(std::span<const std::uint8_t> y) const {
  double v = alpha;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    if (y[j]) v -= beta[j];
  }
  return v;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t acc = 1;
  for (int t = 1; t <= k; ++t) {
    const auto f = static_cast<std::uint64_t>(n - k + t);
    if (acc > std::numeric_limits<std::uint64_t>::max() / f) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    acc = acc * f / static_cast<std::uint64_t>(t);
  }
  return acc;
}

SeparationResult exact_best_response(const Instance& inst,
                                     const LeaderSolution& x_hat,
                                     std::uint64_t budget) {
  const int n = inst.num_sites();
  const int m = inst.num_customers();
  const int r = inst.r();
  if (static_cast<int>(x_hat.x.size()) != n) {
    throw std::invalid_argument("leader vector has wrong dimension");
  }
  if (!x_hat.is_binary()) {
    throw std::invalid_argument("exact separation needs a binary leader point");
  }
  const std::uint64_t subsets = binomial(n, r);
  const std::uint64_t work =
      subsets > budget / static_cast<std::uint64_t>(m) ? budget + 1 : subsets * m;
  if (work > budget) {
    throw EnumerationBudgetExceeded("follower enumeration needs C(" +
                                    std::to_string(n) + "," + std::to_string(r) +
                                    ")*|I| evaluations, over budget");
  }

  ResponseSearch search{inst, {}, {}, {}, {}, {}, 0.0, n, r};
  search.best_value = std::numeric_limits<double>::infinity();
  search.num.resize(m);
  search.add.resize(static_cast<std::size_t>(m) * n);
  search.den.assign(r + 1, std::vector<double>(m, 0.0));
  search.chosen.assign(r, 0);
  for (int i = 0; i < m; ++i) {
    const auto w = inst.w_row(i);
    double a = inst.uL(i);
    for (int j = 0; j < n; ++j) {
      a += w[j] * x_hat.x[j];
      search.add[static_cast<std::size_t>(i) * n + j] = w[j] * (1.0 - x_hat.x[j]);
    }
    search.num[i] = a;
    search.den[0][i] = a + inst.uF(i);
  }
  search.run(0, 0);

  SeparationResult res;
  res.y = FollowerSolution::from_sites(n, search.best);
  res.value = search.best_value;
  res.mode = SeparationMode::Exact;
  return res;
}

ApproxCoefficients approx_coefficients(const Instance& inst,
                                       std::span<const double> x_hat) {
  const int n = inst.num_sites();
  const int r = inst.r();
  if (static_cast<int>(x_hat.size()) != n) {
    throw std::invalid_argument("leader vector has wrong dimension");
  }
  ApproxCoefficients out;
  out.beta.assign(n, 0.0);
  std::vector<double> c(n);
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    double a = inst.uL(i);
    for (int j = 0; j < n; ++j) {
      a += w[j] * x_hat[j];
      c[j] = w[j] * (1.0 - x_hat[j]);
    }
    if (!(a > 0.0)) continue;
    std::sort(c.begin(), c.end());
    double lo = inst.uF(i);
    double hi = inst.uF(i);
    for (int t = 0; t < r; ++t) {
      lo += c[t];
      hi += c[n - 1 - t];
    }
    const double scale = inst.h(i) * a / ((a + hi) * (a + lo));
    out.alpha += scale * (a + hi + lo - inst.uF(i));
    for (int j = 0; j < n; ++j) {
      out.beta[j] += scale * w[j] * (1.0 - x_hat[j]);
    }
  }
  return out;
}

std::vector<int> top_r_indices(std::span<const double> values, int r) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return values[a] > values[b]; });
  idx.resize(std::min<std::size_t>(idx.size(), static_cast<std::size_t>(r)));
  std::sort(idx.begin(), idx.end());
  return idx;
}

SeparationResult approx_separation(const Instance& inst,
                                   std::span<const double> x_hat) {
  const auto coef = approx_coefficients(inst, x_hat);
  SeparationResult res;
  res.y = FollowerSolution::from_sites(inst.num_sites(),
                                       top_r_indices(coef.beta, inst.r()));
  res.value = coef.bound(res.y.y);
  res.mode = SeparationMode::Approximate;
  return res;
}

SeparationResult hybrid_separation(const Instance& inst,
                                   const LeaderSolution& x_hat,
                                   double theta_hat, double tol,
                                   std::uint64_t budget) {
  auto res = approx_separation(inst, x_hat.x);
  if (res.value < theta_hat - tol) {
    res.value = detail::share_relaxed(inst, x_hat.x, res.y.y);
    res.violated = true;
    return res;
  }
  return exact_separation(inst, x_hat, theta_hat, tol, budget);
}

SeparationResult exact_separation(const Instance& inst,
                                  const LeaderSolution& x_hat, double theta_hat,
                                  double tol, std::uint64_t budget) {
  auto res = exact_best_response(inst, x_hat, budget);
  res.violated = res.value < theta_hat - tol;
  return res;
}

}  // namespace seqcflp
