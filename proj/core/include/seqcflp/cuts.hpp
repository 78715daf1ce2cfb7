/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "seqcflp/model.hpp"

namespace seqcflp {

/// 0/1 membership over candidate sites.
using SiteMask = std::vector<std::uint8_t>;

SiteMask mask_from_sites(int num_sites, std::span<const int> sites);
std::vector<int> sites_from_mask(const SiteMask& mask);

enum class CutFamily { Submodular, Bulge, ApproxSep, SurrogateS, SurrogateT };

std::string_view to_string(CutFamily f);

/// Affine row `intercept + coeffs . x`.
///
/// Submodular / Bulge / ApproxSep rows bound theta from above. SurrogateS and
/// SurrogateT rows bound s_i / t_ij from below. ApproxSep rows are indexed by
/// the follower variables y instead of x.
struct CutRow {
  double intercept = 0.0;
  std::vector<double> coeffs;
  CutFamily family = CutFamily::Submodular;
  std::vector<int> follower_sites;  // Y
  std::vector<int> anchor_sites;    // S, submodular only
  int customer = -1;                // surrogate rows
  int site = -1;                    // SurrogateT rows

  double evaluate(std::span<const double> x) const;
};

/// L_Y(S) = sum_i h_i (uL_i + w_i(S)) / (uL_i + uF_i + w_i(S u Y)) and its
/// marginal gains for one fixed follower set Y.
///
/// A customer whose denominator vanishes (S u Y empty, uL = uF = 0)
/// contributes 0.
class FollowerSetShare {
 public:
  FollowerSetShare(const Instance& inst, std::span<const int> follower_sites);

  const Instance& instance() const { return *inst_; }
  const SiteMask& follower() const { return y_; }

  double value(const SiteMask& s) const;
  /// rho(S; k) for every k; zero for k in S.
  std::vector<double> gains(const SiteMask& s) const;
  /// rho(J \ {k}; k) for every k, computed once.
  std::span<const double> full_gains() const { return full_gains_; }

  /// H(S) at a fractional point: the submodular cut anchored at S evaluated
  /// at x_hat.
  double anchor_objective(const SiteMask& s, std::span<const double> x_hat) const;

  CutRow cut(const SiteMask& s) const;

 private:
  const Instance* inst_;
  SiteMask y_;
  std::vector<double> full_gains_;
};

CutRow submodular_cut(const Instance& inst, std::span<const int> anchor,
                      std::span<const int> follower);

/// Anchor set for the submodular cut at x_hat. Binary x_hat returns its own
/// support. Otherwise |J| <= 12 is solved exhaustively and larger instances use
/// greedy add/drop descent from {j : x_hat_j >= 0.5}.
std::vector<int> select_submodular_anchor(const Instance& inst,
                                          std::span<const double> x_hat,
                                          std::span<const int> follower);
SiteMask select_submodular_anchor(const FollowerSetShare& share,
                                  std::span<const double> x_hat);

/// Tangent of bulge_value(., y_hat) at x_hat.
CutRow bulge_cut(const Instance& inst, std::span<const double> x_hat,
                 const FollowerSolution& y_hat);

/// theta <= bulge_value(x, y), decided through the per-customer rotated cone
///   || [2 sqrt(w_ij)(1 - x_j)]_{y_j=1}, 2 sqrt(uF_i), D_i + theta_i - 1 ||
///     <= D_i - theta_i + 1
/// with D_i the bulge denominator. Test-only cross-check.
bool soc_certificate_check(const Instance& inst, double theta,
                           std::span<const double> x, const FollowerSolution& y);

/// s_i >= (uL_i + sum_k w_ik (2 xh_k - x_k)) / a_i(xh)^2.
CutRow surrogate_s_cut(const Instance& inst, int customer,
                       std::span<const double> x_hat);

/// Tangent of the perspective (1 - x_j)^2 / (uL_i (1 - x_j) + sum_{k!=j} w_ik x_k)
/// at x_hat. Degenerates to t_ij >= 0 when x_hat_j = 1.
CutRow surrogate_t_cut(const Instance& inst, int customer, int site,
                       std::span<const double> x_hat);

}  // namespace seqcflp
