/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <iosfwd>

namespace seqcflp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitLimit = 1;
inline constexpr int kExitInputError = 2;

/// Workbench entry point: gen, solve, approx, oracle, sweep-beta, report.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace seqcflp
