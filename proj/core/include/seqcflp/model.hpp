/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace seqcflp {

/// Raised when instance data violates a structural invariant.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sequential competitive facility location market under MNL choice.
///
/// Customer i carries demand share h_i and sees utility w_ij > 0 from a
/// facility at candidate site j. uL_i / uF_i are the aggregated utilities of
/// facilities the leader / follower already operate. The leader opens p new
/// facilities, then the follower opens r.
///
/// Immutable after construction; safe to share across threads.
class Instance {
 public:
  /// `w` is row-major, num_customers x num_sites.
  Instance(std::vector<double> h, std::vector<double> w, std::vector<double> uL,
           std::vector<double> uF, int p, int r);

  static Instance from_rows(std::vector<double> h,
                            const std::vector<std::vector<double>>& w,
                            std::vector<double> uL, std::vector<double> uF,
                            int p, int r);

  int num_customers() const { return static_cast<int>(h_.size()); }
  int num_sites() const { return num_sites_; }
  int p() const { return p_; }
  int r() const { return r_; }

  double h(int i) const { return h_[i]; }
  double uL(int i) const { return uL_[i]; }
  double uF(int i) const { return uF_[i]; }
  double w(int i, int j) const {
    return w_[static_cast<std::size_t>(i) * num_sites_ + j];
  }
  std::span<const double> w_row(int i) const {
    return {w_.data() + static_cast<std::size_t>(i) * num_sites_,
            static_cast<std::size_t>(num_sites_)};
  }

  std::span<const double> demand() const { return h_; }
  std::span<const double> leader_base() const { return uL_; }
  std::span<const double> follower_base() const { return uF_; }
  std::span<const double> utilities() const { return w_; }

  /// Same market with a different budget pair.
  Instance with_budgets(int p, int r) const;

 private:
  std::vector<double> h_;
  std::vector<double> w_;
  std::vector<double> uL_;
  std::vector<double> uF_;
  int num_sites_ = 0;
  int p_ = 0;
  int r_ = 0;
};

/// Leader decision over candidate sites; fractional inside relaxations.
struct LeaderSolution {
  std::vector<double> x;

  bool is_binary(double tol = 0.0) const;
  /// Sites with x_j > 0.5, ascending.
  std::vector<int> sites() const;
  double total() const;

  static LeaderSolution from_sites(int num_sites, std::span<const int> sites);
};

/// Follower decision: a 0/1 incidence vector over candidate sites.
struct FollowerSolution {
  std::vector<std::uint8_t> y;

  std::vector<int> sites() const;
  int count() const;

  static FollowerSolution from_sites(int num_sites, std::span<const int> sites);
};

/// Leader share with disjoint placements: denominators use x_j + y_j.
double leader_share_plus(const Instance& inst, const LeaderSolution& x,
                         const FollowerSolution& y);

/// Co-location tolerant leader share: denominators use max(x_j, y_j).
double leader_share_max(const Instance& inst, const LeaderSolution& x,
                        const FollowerSolution& y);

/// Follower share; requires disjoint supports.
double follower_share(const Instance& inst, const LeaderSolution& x,
                      const FollowerSolution& y);

/// Concave "bulged" extension of leader_share_max in x for fixed binary y.
/// Agrees with leader_share_max at every binary x.
double bulge_value(const Instance& inst, std::span<const double> x,
                   const FollowerSolution& y);

/// Gradient of bulge_value with respect to x.
std::vector<double> bulge_gradient(const Instance& inst,
                                   std::span<const double> x,
                                   const FollowerSolution& y);

namespace detail {

/// Leader share with x_j + y_j - x_j*y_j in the denominator. Equals
/// leader_share_max on binary inputs and is defined for fractional x.
double share_relaxed(const Instance& inst, std::span<const double> x,
                     std::span<const std::uint8_t> y);

}  // namespace detail

}  // namespace seqcflp
