/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

// Reference implementations used as oracles. Deliberately naive and written
// straight from the model definitions; nothing here calls into core except
// to build an Instance.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "seqcflp/model.hpp"

namespace seqcflp::testing {

struct Market {
  std::vector<double> h;
  std::vector<std::vector<double>> w;
  std::vector<double> uL;
  std::vector<double> uF;
  int p = 1;
  int r = 1;

  int customers() const { return static_cast<int>(h.size()); }
  int sites() const { return w.empty() ? 0 : static_cast<int>(w[0].size()); }
  Instance instance() const { return Instance::from_rows(h, w, uL, uF, p, r); }
};

inline Market t1() { return {{1.0}, {{1.0, 1.0}}, {0.0}, {0.0}, 1, 1}; }
inline Market t3() { return {{1.0}, {{4.0, 2.0, 1.0}}, {1.0}, {1.0}, 1, 1}; }

/// Random market; about a third of the customers have uL = uF = 0.
inline Market random_market(std::mt19937_64& rng, int max_customers, int min_sites,
                            int max_sites, int max_budget) {
  std::uniform_int_distribution<int> ni(1, max_customers);
  std::uniform_int_distribution<int> nj(min_sites, max_sites);
  std::uniform_real_distribution<double> uw(0.05, 5.0);
  std::uniform_real_distribution<double> uu(0.0, 2.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Market m;
  const int I = ni(rng);
  const int J = nj(rng);
  const int cap = std::max(1, std::min(max_budget, J - 1));
  std::uniform_int_distribution<int> np(1, cap);
  m.p = np(rng);
  std::uniform_int_distribution<int> nr(1, std::max(1, std::min(max_budget, J - m.p)));
  m.r = nr(rng);
  double total = 0.0;
  for (int i = 0; i < I; ++i) {
    m.h.push_back(0.1 + u01(rng));
    total += m.h.back();
    std::vector<double> row(J);
    for (double& v : row) v = uw(rng);
    m.w.push_back(row);
    const bool bare = u01(rng) < 1.0 / 3.0;
    m.uL.push_back(bare ? 0.0 : uu(rng));
    m.uF.push_back(bare ? 0.0 : uu(rng));
  }
  for (double& v : m.h) v /= total;
  return m;
}

inline std::vector<double> mask_vector(int n, std::uint64_t mask) {
  std::vector<double> x(n, 0.0);
  for (int j = 0; j < n; ++j) {
    if (mask >> j & 1U) x[j] = 1.0;
  }
  return x;
}

/// Leader share with x_j + y_j in the denominator.
inline double share_plus(const Market& m, const std::vector<double>& x,
                         const std::vector<double>& y) {
  double v = 0.0;
  for (int i = 0; i < m.customers(); ++i) {
    double num = m.uL[i];
    double den = m.uL[i] + m.uF[i];
    for (int j = 0; j < m.sites(); ++j) {
      num += m.w[i][j] * x[j];
      den += m.w[i][j] * (x[j] + y[j]);
    }
    v += m.h[i] * num / den;
  }
  return v;
}

/// Leader share with max(x_j, y_j) in the denominator.
inline double share_max(const Market& m, const std::vector<double>& x,
                        const std::vector<double>& y) {
  double v = 0.0;
  for (int i = 0; i < m.customers(); ++i) {
    double num = m.uL[i];
    double den = m.uL[i] + m.uF[i];
    for (int j = 0; j < m.sites(); ++j) {
      num += m.w[i][j] * x[j];
      den += m.w[i][j] * std::max(x[j], y[j]);
    }
    v += m.h[i] * num / den;
  }
  return v;
}

/// Follower share with disjoint supports.
inline double share_follower(const Market& m, const std::vector<double>& x,
                             const std::vector<double>& y) {
  double v = 0.0;
  for (int i = 0; i < m.customers(); ++i) {
    double num = m.uF[i];
    double den = m.uL[i] + m.uF[i];
    for (int j = 0; j < m.sites(); ++j) {
      num += m.w[i][j] * y[j];
      den += m.w[i][j] * (x[j] + y[j]);
    }
    v += m.h[i] * num / den;
  }
  return v;
}

/// L_Y(S) over masks; zero-denominator customers contribute nothing.
inline double set_share(const Market& m, std::uint64_t s, std::uint64_t y) {
  double v = 0.0;
  for (int i = 0; i < m.customers(); ++i) {
    double num = m.uL[i];
    double den = m.uL[i] + m.uF[i];
    for (int j = 0; j < m.sites(); ++j) {
      if (s >> j & 1U) num += m.w[i][j];
      if ((s | y) >> j & 1U) den += m.w[i][j];
    }
    if (den > 0.0) v += m.h[i] * num / den;
  }
  return v;
}

/// Closed-form concave extension for binary y, written out per customer as
/// (uL + sum w x + sum_{y=1} w x (1 - x)) / (uL + uF + sum w x + sum_{y=1} w (1 - x)).
inline double bulge(const Market& m, const std::vector<double>& x,
                    const std::vector<double>& y) {
  double v = 0.0;
  for (int i = 0; i < m.customers(); ++i) {
    double num = m.uL[i];
    double den = m.uL[i] + m.uF[i];
    for (int j = 0; j < m.sites(); ++j) {
      num += m.w[i][j] * x[j];
      den += m.w[i][j] * x[j];
      if (y[j] > 0.5) {
        num += m.w[i][j] * x[j] * (1.0 - x[j]);
        den += m.w[i][j] * (1.0 - x[j]);
      }
    }
    v += m.h[i] * num / den;
  }
  return v;
}

template <class F>
void for_each_mask(int n, int k, F&& f) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) == k) f(mask);
  }
}

/// min over |y| = r of share_max.
inline double inner_min(const Market& m, const std::vector<double>& x) {
  double best = std::numeric_limits<double>::infinity();
  for_each_mask(m.sites(), m.r, [&](std::uint64_t y) {
    best = std::min(best, share_max(m, x, mask_vector(m.sites(), y)));
  });
  return best;
}

/// min over |y| = r, y disjoint from x, of share_plus.
inline double inner_min_disjoint(const Market& m, std::uint64_t xmask) {
  const auto x = mask_vector(m.sites(), xmask);
  double best = std::numeric_limits<double>::infinity();
  for_each_mask(m.sites(), m.r, [&](std::uint64_t y) {
    if (y & xmask) return;
    best = std::min(best, share_plus(m, x, mask_vector(m.sites(), y)));
  });
  return best;
}

/// max over |x| = p of inner_min.
inline double brute_force_z(const Market& m) {
  double best = -1.0;
  for_each_mask(m.sites(), m.p, [&](std::uint64_t x) {
    best = std::max(best, inner_min(m, mask_vector(m.sites(), x)));
  });
  return best;
}

inline std::vector<double> random_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = u01(rng);
  return x;
}

}  // namespace seqcflp::testing
