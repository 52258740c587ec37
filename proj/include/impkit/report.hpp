// report.hpp - pass/fail reports shared by the property checkers
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <limits>
#include <string>
#include <vector>

namespace impkit {

/// One failed assertion: which trial/point, what was observed, what bound it
/// had to satisfy.
struct Violation {
  std::string where;
  double observed = 0.0;
  double bound = 0.0;
};

/// Outcome of a checker run. pass() iff no violations were recorded;
/// worst_margin is the smallest slack seen across all assertions (negative
/// means violated). Serialization is deterministic: identical parameters and
/// seeds yield byte-identical JSON.
struct CheckReport {
  std::string name;
  long long trials = 0;
  std::vector<Violation> violations;
  double worst_margin = std::numeric_limits<double>::infinity();

  bool pass() const { return violations.empty(); }
  void note_margin(double margin);
  /// margin = bound - observed for upper bounds, observed - bound for lower
  /// bounds; caller passes the signed slack.
  void require(double margin, const std::string& where, double observed, double bound,
               double tolerance = 1e-12);
  void merge(const CheckReport& other);

  std::string to_json() const;  // stable key order, deterministic formatting
  std::string summary() const;  // one-line verdict
};

}  // namespace impkit
