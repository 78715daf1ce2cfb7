/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/cli.hpp"

int main(int argc, char** argv) { return seqcflp::run_cli(argc, argv); }
