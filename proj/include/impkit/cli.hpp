// cli.hpp - command-line front end: subcommands, flat config files, outputs
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "impkit/sequences.hpp"
#include "impkit/signals.hpp"

namespace impkit::cli {

/// Everything a run needs, with defaults. A flat key=value config file can
/// preload any field; command-line flags override file values. Unknown keys
/// are rejected.
struct RunConfig {
  std::string subcommand;
  // simulate
  std::string system = "A";
  std::string gamma = "gammastar";
  std::string jump = "tv";
  std::string t0 = "0";
  double x0 = 0.0;
  std::string tend = "10";
  std::string input = "zero";
  std::string engine = "exact";
  // experiment parameters
  int nmax = 10;
  std::vector<double> deltas = {0.5, 0.1, 0.01};
  double delta1 = 0.3;
  double delta2 = 0.2;
  std::string rho1 = "id";
  std::string rho2 = "id";
  std::string alpha = "id";
  std::string beta0 = "id";
  int block_override = 0;
  long long trials = 1000;
  std::uint64_t seed = 2026;
  std::string horizon = "20";
  bool serial = false;
  // outputs
  std::string out;       // CSV path
  std::string json_out;  // JSON path
  std::string outdir;    // defaults to $IMPKIT_OUTDIR when unset
};

RunConfig parse_config_file(std::istream& in);
void dump_config(const RunConfig& cfg, std::ostream& out);

/// "gammastar", "periodic:<first>:<dwell>", "file:<path>",
/// "explicit:t1,t2,...".
ImpulseTimeSequence parse_sequence(const std::string& spec);
/// "zero", "ustar:<N>", "file:<path>".
InputSignal parse_input(const std::string& spec);

/// Exit code 0: requested properties hold (including expected violations
/// confirmed); 1: unexpected result; 2: usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace impkit::cli
