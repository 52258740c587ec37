// report.cpp
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#include "impkit/report.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

namespace impkit {

void CheckReport::note_margin(double margin) { worst_margin = std::min(worst_margin, margin); }

void CheckReport::require(double margin, const std::string& where, double observed, double bound,
                          double tolerance) {
  note_margin(margin);
  if (margin < -tolerance) violations.push_back(Violation{where, observed, bound});
}

void CheckReport::merge(const CheckReport& other) {
  trials += other.trials;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  note_margin(other.worst_margin);
}

std::string CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["trials"] = trials;
  j["pass"] = pass();
  j["worst_margin"] = worst_margin;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : violations) {
    nlohmann::ordered_json item;
    item["where"] = v.where;
    item["observed"] = v.observed;
    item["bound"] = v.bound;
    arr.push_back(std::move(item));
  }
  j["violations"] = std::move(arr);
  return j.dump(2);
}

std::string CheckReport::summary() const {
  char margin_buf[32];
  std::snprintf(margin_buf, sizeof margin_buf, "%.6g", worst_margin);
  std::string line = name + ": " + (pass() ? "PASS" : "FAIL") + " (trials=" +
                     std::to_string(trials) + ", worst_margin=" + margin_buf + ")";
  if (!pass()) {
    line += " first violation: " + violations.front().where;
  }
  return line;
}

}  // namespace impkit
