// interval.hpp - time intervals with explicit endpoint openness
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <limits>

#include "impkit/rational.hpp"

namespace impkit {

/// An interval of nonnegative times. Each end is open or closed; the upper
/// end may be +infinity. Input norms and event enumeration take intervals,
/// so the (t0, t] / [a, inf) distinctions stay explicit at call sites.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;
  bool hi_unbounded = false;

  static Interval closed(Rational a, Rational b) { return {a, b, true, true, false}; }
  static Interval open(Rational a, Rational b) { return {a, b, false, false, false}; }
  static Interval open_closed(Rational a, Rational b) { return {a, b, false, true, false}; }
  static Interval closed_open(Rational a, Rational b) { return {a, b, true, false, false}; }
  static Interval at_least(Rational a) { return {a, Rational(0), true, false, true}; }
  static Interval above(Rational a) { return {a, Rational(0), false, false, true}; }

  bool empty() const {
    if (hi_unbounded) return false;
    if (lo > hi) return true;
    return lo == hi && !(lo_closed && hi_closed);
  }

  bool contains(const Rational& t) const {
    if (t < lo || (t == lo && !lo_closed)) return false;
    if (hi_unbounded) return true;
    if (t > hi || (t == hi && !hi_closed)) return false;
    return true;
  }

  /// Measure of the interval as a double; +inf when unbounded.
  double length() const {
    if (hi_unbounded) return std::numeric_limits<double>::infinity();
    if (empty()) return 0.0;
    return (hi - lo).to_double();
  }
};

}  // namespace impkit
