/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace seqcflp {

namespace {

using Json = nlohmann::ordered_json;

Json nullable(double v) { return std::isnan(v) ? Json(nullptr) : Json(v); }

std::vector<double> ranks(std::span<const double> v) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
  std::vector<double> out(v.size());
  std::size_t k = 0;
  while (k < idx.size()) {
    std::size_t e = k;
    while (e + 1 < idx.size() && v[idx[e + 1]] == v[idx[k]]) ++e;
    const double avg = 0.5 * static_cast<double>(k + e) + 1.0;
    for (std::size_t t = k; t <= e; ++t) out[idx[t]] = avg;
    k = e + 1;
  }
  return out;
}

std::string percent(double v) {
  if (std::isnan(v)) return "N/A";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", 100.0 * v);
  return buf;
}

}  // namespace

std::string solve_report_json(const std::string& name, const SolverConfig& config,
                              const SolveReport& report, bool include_timing) {
  Json doc;
  doc["instance"] = name;
  doc["config"] = {{"cuts", std::string(to_string(config.cuts))},
                   {"separation", std::string(to_string(config.separation))},
                   {"tol", config.tol}};
  doc["status"] = std::string(to_string(report.status));
  doc["z_best"] = report.has_incumbent ? Json(report.z_best) : Json(nullptr);
  doc["z_bound"] = report.z_bound;
  doc["gap"] = report.gap;
  doc["best_x"] = report.best_x.sites();
  doc["num_cuts"] = {{"submodular", report.num_cuts_submodular},
                     {"bulge", report.num_cuts_bulge},
                     {"total", report.num_cuts()}};
  doc["num_nodes"] = report.num_nodes;
  doc["num_lazy_rounds"] = report.num_lazy_rounds;
  doc["num_lp_solves"] = report.num_lp_solves;
  doc["gap_trace"] = {{"Gap_1", nullable(report.gap_trace[0])},
                      {"Gap_3", nullable(report.gap_trace[1])},
                      {"Gap_10", nullable(report.gap_trace[2])}};
  if (include_timing) doc["wall_time"] = report.wall_time;
  return doc.dump(2) + "\n";
}

std::string approx_report_json(const std::string& name, const ApproxReport& report,
                               double z_star_hint, bool include_timing) {
  Json doc;
  doc["instance"] = name;
  doc["status"] = std::string(to_string(report.status));
  doc["x_H"] = report.x_H.sites();
  doc["surrogate_value"] = report.surrogate_value;
  doc["z_H"] = report.z_H;
  doc["z_upper"] = report.z_upper;
  doc["gamma_m"] = report.gamma_m;
  doc["gamma_M"] = report.gamma_M;
  doc["ratio_lower"] = report.ratio_lower;
  if (!std::isnan(z_star_hint)) {
    doc["z_star"] = z_star_hint;
    doc["obj_gap"] = z_star_hint > 0.0 ? 1.0 - report.z_H / z_star_hint : 0.0;
  }
  doc["num_nodes"] = report.num_nodes;
  doc["num_cuts"] = report.num_cuts;
  if (include_timing) doc["wall_time"] = report.wall_time;
  return doc.dump(2) + "\n";
}

std::string oracle_report_json(const std::string& name, const OracleResult& result) {
  Json doc;
  doc["instance"] = name;
  doc["z_star"] = result.z_star;
  doc["x_star"] = result.x_star.sites();
  doc["evaluations"] = result.evaluations;
  return doc.dump(2) + "\n";
}

ReportRow make_report_row(const std::string& name, const SolverConfig& config,
                          const SolveReport& report) {
  ReportRow row;
  row.instance = name;
  row.config = std::string(to_string(config.cuts)) + "/" +
               std::string(to_string(config.separation));
  row.time = report.wall_time;
  row.cuts = report.num_cuts();
  row.nodes = report.num_nodes;
  for (int k = 0; k < 3; ++k) row.gap[k] = report.gap_trace[k];
  return row;
}

std::string csv_header() {
  return "instance,config,Time(s),#Cuts,#Nodes,Gap_1,Gap_3,Gap_10";
}

std::string csv_row(const ReportRow& row) {
  char t[32];
  std::snprintf(t, sizeof t, "%.3f", row.time);
  return row.instance + "," + row.config + "," + t + "," + std::to_string(row.cuts) +
         "," + std::to_string(row.nodes) + "," + percent(row.gap[0]) + "," +
         percent(row.gap[1]) + "," + percent(row.gap[2]);
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument("spearman needs two equal-length samples");
  }
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t k = 0; k < ra.size(); ++k) {
    sab += (ra[k] - ma) * (rb[k] - mb);
    saa += (ra[k] - ma) * (ra[k] - ma);
    sbb += (rb[k] - mb) * (rb[k] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace seqcflp
