// bench.cpp - serial reference vs OpenMP sweep timings
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "impkit/parallel.hpp"
#include "impkit/signals.hpp"
#include "impkit/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Timing {
  std::string name;
  double serial_s = 0.0;
  double parallel_s = 0.0;
  bool identical = false;
};

template <class Fn>
Timing time_both(const std::string& name, Fn&& body) {
  Timing t;
  t.name = name;
  auto s0 = Clock::now();
  const std::string serial_json = body(impkit::Exec::Serial);
  t.serial_s = seconds_since(s0);
  auto p0 = Clock::now();
  const std::string parallel_json = body(impkit::Exec::Parallel);
  t.parallel_s = seconds_since(p0);
  t.identical = serial_json == parallel_json;
  return t;
}

}  // namespace

int main() {
  using namespace impkit;
  std::printf("impkit sweep benchmark: serial reference vs OpenMP (%d thread(s))\n",
              max_threads());

  std::vector<Timing> rows;
  rows.push_back(time_both("check_gus default grid", [](Exec exec) {
    return verify::check_gus(verify::default_grid(), exec).to_json();
  }));
  rows.push_back(time_both("check_settling default grid", [](Exec exec) {
    return verify::check_settling(verify::default_grid(), 0, 3, exec).to_json();
  }));
  rows.push_back(time_both("check_ubebs 2000 trials", [](Exec exec) {
    return verify::check_ubebs(2000, 0xBE7CULL, exec).to_json();
  }));
  rows.push_back(time_both("iiss witness sweep (48 runs)", [](Exec exec) {
    const double budgets[] = {1.0, 0.3, 0.1, 0.01};
    const char* gains[] = {"id", "r2", "r3"};
    std::vector<std::string> results(48);
    parallel_for(48, exec, [&](std::size_t i) {
      const double d1 = budgets[i % 4];
      const double d2 = budgets[(i / 4) % 4];
      const auto rho2 = KFunction::from_name(gains[i / 16]);
      results[i] = verify::run_iiss_violation(d1, d2, KFunction::identity(), rho2).details_json;
    });
    std::string all;
    for (const auto& r : results) all += r;
    return all;
  }));

  std::printf("%-34s %12s %12s %9s %s\n", "sweep", "serial [s]", "openmp [s]", "speedup",
              "identical");
  bool all_identical = true;
  for (const auto& row : rows) {
    std::printf("%-34s %12.3f %12.3f %8.2fx %s\n", row.name.c_str(), row.serial_s,
                row.parallel_s, row.serial_s / (row.parallel_s > 0 ? row.parallel_s : 1e-9),
                row.identical ? "yes" : "NO");
    all_identical = all_identical && row.identical;
  }
  if (!all_identical) {
    std::printf("ERROR: serial and OpenMP sweeps disagree\n");
    return 1;
  }
  return 0;
}
