/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/cuts.hpp"

#include <cmath>
#include <stdexcept>

namespace seqcflp {

namespace {

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

void require_dim(std::span<const double> x, const Instance& inst) {
  if (static_cast<int>(x.size()) != inst.num_sites()) {
    throw std::invalid_argument("leader vector has wrong dimension");
  }
}

constexpr int kExhaustiveAnchorSites = 12;

}  // namespace

SiteMask mask_from_sites(int num_sites, std::span<const int> sites) {
  SiteMask m(num_sites, 0);
  for (int j : sites) {
    if (j < 0 || j >= num_sites) throw std::out_of_range("site index");
    m[j] = 1;
  }
  return m;
}

std::vector<int> sites_from_mask(const SiteMask& mask) {
  std::vector<int> out;
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (mask[j]) out.push_back(static_cast<int>(j));
  }
  return out;
}

std::string_view to_string(CutFamily f) {
  switch (f) {
    case CutFamily::Submodular: return "submodular";
    case CutFamily::Bulge: return "bulge";
    case CutFamily::ApproxSep: return "approx-sep";
    case CutFamily::SurrogateS: return "surrogate-s";
    case CutFamily::SurrogateT: return "surrogate-t";
  }
  return "unknown";
}

double CutRow::evaluate(std::span<const double> x) const {
  if (x.size() != coeffs.size()) {
    throw std::invalid_argument("cut evaluated at a point of wrong dimension");
  }
  double v = intercept;
  for (std::size_t j = 0; j < x.size(); ++j) v += coeffs[j] * x[j];
  return v;
}

FollowerSetShare::FollowerSetShare(const Instance& inst,
                                   std::span<const int> follower_sites)
    : inst_(&inst), y_(mask_from_sites(inst.num_sites(), follower_sites)) {
  const int n = inst.num_sites();
  full_gains_.assign(n, 0.0);
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    double total = 0.0;
    for (int j = 0; j < n; ++j) total += w[j];
    const double num_all = inst.uL(i) + total;
    const double den_all = inst.uL(i) + inst.uF(i) + total;
    const double f_all = safe_ratio(num_all, den_all);
    for (int k = 0; k < n; ++k) {
      const double num = num_all - w[k];
      const double den = y_[k] ? den_all : den_all - w[k];
      full_gains_[k] += inst.h(i) * (f_all - safe_ratio(num, den));
    }
  }
}

double FollowerSetShare::value(const SiteMask& s) const {
  const Instance& inst = *inst_;
  const int n = inst.num_sites();
  double total = 0.0;
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    double num = inst.uL(i);
    double den = inst.uL(i) + inst.uF(i);
    for (int j = 0; j < n; ++j) {
      if (s[j]) num += w[j];
      if (s[j] || y_[j]) den += w[j];
    }
    total += inst.h(i) * safe_ratio(num, den);
  }
  return total;
}

std::vector<double> FollowerSetShare::gains(const SiteMask& s) const {
  const Instance& inst = *inst_;
  const int n = inst.num_sites();
  std::vector<double> g(n, 0.0);
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    double num = inst.uL(i);
    double den = inst.uL(i) + inst.uF(i);
    for (int j = 0; j < n; ++j) {
      if (s[j]) num += w[j];
      if (s[j] || y_[j]) den += w[j];
    }
    const double base = safe_ratio(num, den);
    const double hi = inst.h(i);
    for (int k = 0; k < n; ++k) {
      if (s[k]) continue;
      const double den_k = y_[k] ? den : den + w[k];
      g[k] += hi * (safe_ratio(num + w[k], den_k) - base);
    }
  }
  return g;
}

double FollowerSetShare::anchor_objective(const SiteMask& s,
                                          std::span<const double> x_hat) const {
  require_dim(x_hat, *inst_);
  const auto g = gains(s);
  double h = value(s);
  for (int k = 0; k < inst_->num_sites(); ++k) {
    if (s[k]) {
      h -= full_gains_[k] * (1.0 - x_hat[k]);
    } else {
      h += g[k] * x_hat[k];
    }
  }
  return h;
}

CutRow FollowerSetShare::cut(const SiteMask& s) const {
  const int n = inst_->num_sites();
  CutRow row;
  row.family = CutFamily::Submodular;
  row.follower_sites = sites_from_mask(y_);
  row.anchor_sites = sites_from_mask(s);
  row.coeffs = gains(s);
  row.intercept = value(s);
  for (int k = 0; k < n; ++k) {
    if (s[k]) {
      row.intercept -= full_gains_[k];
      row.coeffs[k] = full_gains_[k];
    }
  }
  return row;
}

CutRow submodular_cut(const Instance& inst, std::span<const int> anchor,
                      std::span<const int> follower) {
  FollowerSetShare share(inst, follower);
  return share.cut(mask_from_sites(inst.num_sites(), anchor));
}

SiteMask select_submodular_anchor(const FollowerSetShare& share,
                                  std::span<const double> x_hat) {
  const Instance& inst = share.instance();
  const int n = inst.num_sites();
  require_dim(x_hat, inst);

  bool binary = true;
  for (double v : x_hat) {
    if (v != 0.0 && v != 1.0) binary = false;
  }
  SiteMask s(n, 0);
  if (binary) {
    for (int j = 0; j < n; ++j) s[j] = x_hat[j] > 0.5 ? 1 : 0;
    return s;
  }

  if (n <= kExhaustiveAnchorSites) {
    SiteMask best(n, 0);
    double best_h = share.anchor_objective(best, x_hat);
    for (std::uint32_t code = 1; code < (1u << n); ++code) {
      for (int j = 0; j < n; ++j) s[j] = (code >> j) & 1u;
      const double h = share.anchor_objective(s, x_hat);
      if (h < best_h) {
        best_h = h;
        best = s;
      }
    }
    return best;
  }

  for (int j = 0; j < n; ++j) s[j] = x_hat[j] >= 0.5 ? 1 : 0;
  double current = share.anchor_objective(s, x_hat);
  for (int iter = 0; iter < 4 * n; ++iter) {
    int best_k = -1;
    double best_h = current;
    for (int k = 0; k < n; ++k) {
      if (!s[k] && x_hat[k] <= 0.0) continue;
      s[k] ^= 1;
      const double h = share.anchor_objective(s, x_hat);
      s[k] ^= 1;
      if (h < best_h - 1e-15) {
        best_h = h;
        best_k = k;
      }
    }
    if (best_k < 0) break;
    s[best_k] ^= 1;
    current = best_h;
  }
  return s;
}

std::vector<int> select_submodular_anchor(const Instance& inst,
                                          std::span<const double> x_hat,
                                          std::span<const int> follower) {
  FollowerSetShare share(inst, follower);
  return sites_from_mask(select_submodular_anchor(share, x_hat));
}

CutRow bulge_cut(const Instance& inst, std::span<const double> x_hat,
                 const FollowerSolution& y_hat) {
  CutRow row;
  row.family = CutFamily::Bulge;
  row.follower_sites = y_hat.sites();
  row.coeffs = bulge_gradient(inst, x_hat, y_hat);
  row.intercept = bulge_value(inst, x_hat, y_hat);
  for (std::size_t j = 0; j < x_hat.size(); ++j) {
    row.intercept -= row.coeffs[j] * x_hat[j];
  }
  return row;
}

bool soc_certificate_check(const Instance& inst, double theta,
                           std::span<const double> x, const FollowerSolution& y) {
  require_dim(x, inst);
  if (static_cast<int>(y.y.size()) != inst.num_sites()) {
    throw std::invalid_argument("follower vector has wrong dimension");
  }
  double bound = 0.0;
  for (int i = 0; i < inst.num_customers(); ++i) {
    const auto w = inst.w_row(i);
    double d = inst.uL(i) + inst.uF(i);
    double sq = 4.0 * inst.uF(i);
    for (int j = 0; j < inst.num_sites(); ++j) {
      if (y.y[j]) {
        d += w[j];
        const double z = 1.0 - x[j];
        sq += 4.0 * w[j] * z * z;
      } else {
        d += w[j] * x[j];
      }
    }
    if (!(d > 0.0)) throw std::domain_error("market share denominator is zero");
    // Largest theta_i keeping (d, 1 - theta_i) in the rotated cone.
    const double theta_i = 1.0 - sq / (4.0 * d);
    const double lhs = std::sqrt(sq + (d + theta_i - 1.0) * (d + theta_i - 1.0));
    const double rhs = d - theta_i + 1.0;
    if (lhs > rhs * (1.0 + 1e-12) + 1e-12) return false;
    bound += inst.h(i) * theta_i;
  }
  return theta <= bound;
}

CutRow surrogate_s_cut(const Instance& inst, int customer,
                       std::span<const double> x_hat) {
  require_dim(x_hat, inst);
  const int n = inst.num_sites();
  const auto w = inst.w_row(customer);
  CutRow row;
  row.family = CutFamily::SurrogateS;
  row.customer = customer;
  row.coeffs.assign(n, 0.0);
  double a = inst.uL(customer);
  for (int k = 0; k < n; ++k) a += w[k] * x_hat[k];
  if (!(a > 0.0)) return row;
  const double a2 = a * a;
  row.intercept = (inst.uL(customer) + 2.0 * (a - inst.uL(customer))) / a2;
  for (int k = 0; k < n; ++k) row.coeffs[k] = -w[k] / a2;
  return row;
}

CutRow surrogate_t_cut(const Instance& inst, int customer, int site,
                       std::span<const double> x_hat) {
  require_dim(x_hat, inst);
  const int n = inst.num_sites();
  const auto w = inst.w_row(customer);
  CutRow row;
  row.family = CutFamily::SurrogateT;
  row.customer = customer;
  row.site = site;
  row.coeffs.assign(n, 0.0);
  const double u = 1.0 - x_hat[site];
  if (!(u > 0.0)) return row;
  const double uL = inst.uL(customer);
  double d = uL * u;
  for (int k = 0; k < n; ++k) {
    if (k != site) d += w[k] * x_hat[k];
  }
  if (!(d > 0.0)) return row;
  // Homogeneous of degree one in (1 - x_j, x_{-j}): the tangent has no
  // constant beyond the (1 - x_j) term.
  const double d2 = d * d;
  const double du = (2.0 * u * d - u * u * uL) / d2;
  row.intercept = du;
  row.coeffs[site] = -du;
  for (int k = 0; k < n; ++k) {
    if (k != site) row.coeffs[k] = -u * u * w[k] / d2;
  }
  return row;
}

}  // namespace seqcflp
