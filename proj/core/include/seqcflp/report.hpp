/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "seqcflp/approx.hpp"
#include "seqcflp/bnc.hpp"
#include "seqcflp/oracle.hpp"

namespace seqcflp {

/// JSON documents for the CLI. Timing fields are dropped when
/// include_timing is false so repeated runs compare byte for byte.
std::string solve_report_json(const std::string& name, const SolverConfig& config,
                              const SolveReport& report, bool include_timing);
std::string approx_report_json(const std::string& name, const ApproxReport& report,
                               double z_star_hint, bool include_timing);
std::string oracle_report_json(const std::string& name, const OracleResult& result);

/// One line of the benchmark table.
struct ReportRow {
  std::string instance;
  std::string config;
  double time = 0.0;
  std::int64_t cuts = 0;
  std::int64_t nodes = 0;
  double gap[3] = {0.0, 0.0, 0.0};  // fractions; NaN prints N/A
};

ReportRow make_report_row(const std::string& name, const SolverConfig& config,
                          const SolveReport& report);

/// "instance,config,Time(s),#Cuts,#Nodes,Gap_1,Gap_3,Gap_10"; gaps in percent.
std::string csv_header();
std::string csv_row(const ReportRow& row);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace seqcflp
