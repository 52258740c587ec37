// sequences.hpp - impulse-time sequences: strictly increasing, unbounded
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "impkit/interval.hpp"
#include "impkit/rational.hpp"

namespace impkit {

/// Start of staircase ramp j (the triangular numbers 0, 1, 3, 6, 10, ...).
/// Ramp j occupies [ramp_start(j), ramp_start(j+1)) and carries gate levels
/// 0..j; the same values are the start times of the dyadic burst blocks.
long long ramp_start(long long j);

/// A strictly increasing, unbounded sequence of impulse instants with no
/// finite accumulation point. All times are exact rationals with tau_1 > 0;
/// membership is decided by rational comparison, never floating point.
/// Enumeration is lazy: next_after/times_in generate on demand, nothing
/// beyond the queried horizon is materialized.
///
/// Kinds:
///  - Explicit: a listed prefix. Past the last listed time the sequence
///    continues with the final inter-impulse gap (dwell 1 when only one time
///    is listed) so that the unboundedness invariant holds for loaded files.
///  - Periodic: first, first + dwell, first + 2*dwell, ...
///  - DyadicBursts: block n (n >= 1) holds the 2^n + 1 times
///    ramp_start(n) + k/2^(n+1), k = 0..2^n; blocks concatenate. Every
///    element lies in [ramp_start(n), ramp_start(n) + 1/2], where the gate
///    level is 0.
class ImpulseTimeSequence {
 public:
  enum class Kind { Explicit, Periodic, DyadicBursts };

  static ImpulseTimeSequence explicit_times(std::vector<Rational> times);
  /// Finite blocks concatenated into one explicit sequence; blocks must be
  /// ascending overall.
  static ImpulseTimeSequence concatenation(const std::vector<std::vector<Rational>>& blocks);
  static ImpulseTimeSequence periodic(Rational first, Rational dwell);
  static ImpulseTimeSequence dyadic_bursts();

  /// One time per line, decimal or p/q; blank lines and '#' comments skipped.
  static ImpulseTimeSequence load(std::istream& in);
  static ImpulseTimeSequence load_file(const std::string& path);

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  /// Smallest element strictly greater than t. Total by the unboundedness
  /// invariant.
  Rational next_after(const Rational& t) const;

  /// Exact membership test.
  bool contains(const Rational& t) const;

  /// All elements inside a bounded interval, ascending.
  std::vector<Rational> times_in(const Interval& within) const;
  std::size_t count_in(const Interval& within) const { return times_in(within).size(); }

 private:
  ImpulseTimeSequence() = default;

  Kind kind_ = Kind::DyadicBursts;
  std::string label_;
  std::vector<Rational> times_;  // Explicit
  Rational tail_gap_;            // Explicit continuation gap
  Rational first_;               // Periodic
  Rational dwell_;               // Periodic
};

}  // namespace impkit
