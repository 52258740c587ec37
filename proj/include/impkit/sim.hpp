// sim.hpp - event-aligned simulation producing right-continuous trajectories
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "impkit/model.hpp"
#include "impkit/rational.hpp"
#include "impkit/signals.hpp"

namespace impkit::sim {

enum class Engine { Exact, Rk4 };

/// One state reset: left limit, input value seen by the jump map, post value.
struct JumpRecord {
  Rational time;
  double x_minus = 0.0;
  double input = 0.0;
  double x_plus = 0.0;
};

/// A right-continuous solution record on [start, end]: flow segments between
/// events plus the ordered jump records. Jumps happen exactly at the
/// sequence times inside (start, end] - never at the initial instant - and
/// each stored post value is the jump map applied to the stored left limit,
/// reproducible bit for bit.
class Trajectory {
 public:
  const Rational& start_time() const { return start_; }
  const Rational& end_time() const { return end_; }
  double initial_state() const { return x0_; }
  const std::vector<JumpRecord>& jumps() const { return jumps_; }

  /// x(t) with the right-continuous convention at jump times.
  double sample(const Rational& t) const;
  /// Stored left limit at a recorded jump time; throws otherwise.
  double left_limit(const Rational& tau) const;
  double final_value() const { return sample(end_); }

  /// Largest |x| over segment endpoints and jump values. Exact for the
  /// built-in flows, whose magnitude is monotone between events.
  double max_abs_at_events() const;
  /// Smallest |x| over segment endpoints and jump values (ditto).
  double min_abs_at_events() const;

  /// Columns t,x,kind with kind in {flow, pre_jump, post_jump}; event times
  /// print as exact decimals, flow rows are sampled inside each segment.
  void write_csv(std::ostream& out, int samples_per_segment = 8) const;

 private:
  struct Segment {
    Rational start;
    Rational end;
    double x_start = 0.0;
    double u_const = 0.0;  // base input held on the segment
    bool forced = false;   // flow includes +u
    std::vector<std::pair<double, double>> dense;  // rk4 steps (t, x)
    double eval(double t_offset) const;
    double eval_at(const Rational& t) const;
  };

  friend Trajectory simulate(const model::ImpulsiveSystem&, const Rational&, double,
                             const InputSignal&, const Rational&, Engine, double);

  Rational start_;
  Rational end_;
  double x0_ = 0.0;
  std::vector<Segment> segments_;
  std::vector<JumpRecord> jumps_;
};

/// Integrate the system from (t0, x0) under the given input up to t_end.
/// Exact engine: closed-form decay (optionally with constant forcing per
/// input piece); requires an affine flow. Rk4 engine: classical fixed-step
/// integration with every impulse time and input breakpoint a step boundary
/// and steps no longer than max_step.
Trajectory simulate(const model::ImpulsiveSystem& system, const Rational& t0, double x0,
                    const InputSignal& input, const Rational& t_end,
                    Engine engine = Engine::Exact, double max_step = 1e-3);

}  // namespace impkit::sim
