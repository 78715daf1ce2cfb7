/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seqcflp/model.hpp"

namespace seqcflp {

/// splitmix64: state += 0x9E3779B97F4A7C15, then the standard mix.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Top 53 bits scaled into [0, 1).
  double uniform01();

 private:
  std::uint64_t state_;
};

using Point = std::array<double, 2>;

/// Planar layout behind a generated instance; lets w be rebuilt for new beta.
struct Geometry {
  double beta = 0.1;
  std::vector<double> alpha;  // per site
  std::vector<Point> customer_xy;
  std::vector<Point> site_xy;
  std::uint64_t seed = 0;
  double square_side = 50.0;
};

struct GeneratorSpec {
  int num_customers = 0;
  int num_sites = 0;
  int p = 1;
  int r = 1;
  double beta = 0.1;
  /// Per-site attractiveness; empty means all zero.
  std::vector<double> alpha;
  std::uint64_t seed = 1;
  double square_side = 50.0;
  /// Uniform random demand shares renormalized to 1 instead of 1/|I|.
  bool random_h = false;
};

struct GeneratedInstance {
  Instance instance;
  Geometry geometry;
};

/// w_ij = exp(alpha_j - beta * d_ij).
double mnl_utility(double alpha, double beta, double distance);

/// Customers first, then sites, each coordinate floor(u * (floor(side) + 1));
/// then demand draws when random_h. uL = uF = 0.
GeneratedInstance generate_instance(const GeneratorSpec& spec);

/// Same customers, budgets and demand with w rebuilt from `geometry` at `beta`.
Instance reweight(const Instance& inst, const Geometry& geometry, double beta);

/// "|I|-|J|-p-r".
std::string instance_name(const Instance& inst);

}  // namespace seqcflp
