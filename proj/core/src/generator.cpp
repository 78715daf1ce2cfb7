/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/generator.hpp"

#include <cmath>
#include <stdexcept>

namespace seqcflp {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double mnl_utility(double alpha, double beta, double distance) {
  return std::exp(alpha - beta * distance);
}

namespace {

std::vector<double> utilities(const Geometry& g, double beta) {
  const std::size_t m = g.customer_xy.size();
  const std::size_t n = g.site_xy.size();
  std::vector<double> w(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = g.customer_xy[i][0] - g.site_xy[j][0];
      const double dy = g.customer_xy[i][1] - g.site_xy[j][1];
      const double a = g.alpha.empty() ? 0.0 : g.alpha[j];
      w[i * n + j] = mnl_utility(a, beta, std::hypot(dx, dy));
    }
  }
  return w;
}

}  // namespace

GeneratedInstance generate_instance(const GeneratorSpec& spec) {
  if (spec.num_customers < 1 || spec.num_sites < 1) {
    throw std::invalid_argument("generator needs at least one customer and site");
  }
  if (!(spec.beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  if (!(spec.square_side > 0.0)) {
    throw std::invalid_argument("square side must be positive");
  }
  if (!spec.alpha.empty() &&
      static_cast<int>(spec.alpha.size()) != spec.num_sites) {
    throw std::invalid_argument("alpha needs one entry per site");
  }

  SplitMix64 rng(spec.seed);
  const double cells = std::floor(spec.square_side) + 1.0;
  auto coord = [&] { return std::floor(rng.uniform01() * cells); };

  Geometry g;
  g.beta = spec.beta;
  g.alpha = spec.alpha.empty() ? std::vector<double>(spec.num_sites, 0.0) : spec.alpha;
  g.seed = spec.seed;
  g.square_side = spec.square_side;
  g.customer_xy.resize(spec.num_customers);
  g.site_xy.resize(spec.num_sites);
  for (auto& pt : g.customer_xy) {
    pt[0] = coord();
    pt[1] = coord();
  }
  for (auto& pt : g.site_xy) {
    pt[0] = coord();
    pt[1] = coord();
  }

  std::vector<double> h(spec.num_customers, 1.0 / spec.num_customers);
  if (spec.random_h) {
    double total = 0.0;
    for (double& v : h) {
      v = rng.uniform01();
      total += v;
    }
    for (double& v : h) v /= total;
  }

  std::vector<double> zeros(spec.num_customers, 0.0);
  Instance inst(std::move(h), utilities(g, spec.beta), zeros, zeros, spec.p, spec.r);
  return {std::move(inst), std::move(g)};
}

Instance reweight(const Instance& inst, const Geometry& geometry, double beta) {
  if (static_cast<int>(geometry.customer_xy.size()) != inst.num_customers() ||
      static_cast<int>(geometry.site_xy.size()) != inst.num_sites()) {
    throw std::invalid_argument("geometry does not match the instance");
  }
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  const auto h = inst.demand();
  const auto uL = inst.leader_base();
  const auto uF = inst.follower_base();
  return Instance({h.begin(), h.end()}, utilities(geometry, beta),
                  {uL.begin(), uL.end()}, {uF.begin(), uF.end()}, inst.p(),
                  inst.r());
}

std::string instance_name(const Instance& inst) {
  return std::to_string(inst.num_customers()) + "-" +
         std::to_string(inst.num_sites()) + "-" + std::to_string(inst.p()) +
         "-" + std::to_string(inst.r());
}

}  // namespace seqcflp
