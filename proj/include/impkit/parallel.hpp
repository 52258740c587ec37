// parallel.hpp - OpenMP-or-serial sweep execution
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstddef>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace impkit {

/// Serial is the reference path; Parallel runs the same per-index body under
/// OpenMP. Bodies must be independent per index and write only to their own
/// slot, so both paths produce identical results.
enum class Exec { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class Fn>
void parallel_for(std::size_t count, Exec exec, Fn&& body) {
  std::vector<std::string> errors(count);
#ifdef _OPENMP
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(i)] = e.what();
      }
    }
  } else
#endif
  {
    (void)exec;
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i].empty()) {
      throw std::runtime_error("sweep index " + std::to_string(i) + ": " + errors[i]);
    }
  }
}

}  // namespace impkit
