// model.hpp - the counterexample construction: gate staircase, sawtooth
// jump map, dyadic burst sequence and burst input, high-gate windows
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <functional>

#include "impkit/rational.hpp"
#include "impkit/sequences.hpp"
#include "impkit/signals.hpp"

namespace impkit::model {

/// The jump map either consults the gate staircase (TimeVarying) or pins the
/// gate to 0 (TimeInvariant). On trajectories whose impulse times all have
/// gate level 0 - every dyadic burst time does - the two modes coincide.
enum class JumpMode { TimeVarying, TimeInvariant };

/// Integer staircase: level i on [ramp_start(j) + i, ramp_start(j) + i + 1)
/// for i = 0..j. Ramps of growing length make every level recur forever,
/// yet level 0 also recurs forever, which is what the burst sequence exploits.
int gate_level(const Rational& t);

/// log(r) snapped to the nearest half-integer when within 1e-9 relative.
/// The constructions keep producing exact powers of e (block thresholds,
/// plateau outputs, e^floor(log delta)); their logs must classify exactly
/// before any ceil/branch test.
double snapped_log(double r);

/// Continuous sawtooth on (0, 1]: plateau value e^ceil(log r) on
/// (e^(m-1/2), e^m], affine ramp (1+sqrt(e))*r - e^(m-1/2) on
/// (e^(m-1), e^(m-1/2)]; identity above 1 and at 0. Satisfies
/// r <= sawtooth_lift(r) <= e^ceil(log r) on (0, 1].
double sawtooth_lift(double r);

/// Sawtooth lift applied while |state| <= e^(-gate_level(t)), identity above.
double gated_lift(const Rational& t, double state, JumpMode mode);

/// Post-jump value: gated_lift(t, state) + input. Zero fixed point,
/// nondecreasing in |state|, and equal to |state| + input once |state| >= 1.
double jump_map(const Rational& t, double state, double input, JumpMode mode);

/// Input level fed to burst block n: expm1(-2^-(n+1)) / expm1(-1/2).
/// Chosen so that the level times the block's geometric sum equals 1.
double burst_amplitude(int block);

/// ramp_start(block) + k / 2^(block+1), the k-th time of burst block.
Rational burst_time(int block, long long k);

/// The burst impulse sequence (every element has gate level 0).
ImpulseTimeSequence dyadic_bursts();

/// The vanishing-sup-norm input: value burst_amplitude(n) at every time of
/// block n, zero elsewhere, truncated after max_block (the signal's horizon;
/// norm queries past it throw rather than silently read zeros).
InputSignal burst_input(int max_block);

/// Window of length 1 with gate level >= min_level + 1 throughout
/// [start, start + 1), located within [t0, t0 + search_bound]. The gate
/// value at the closed right endpoint start + 1 is reported separately and
/// may be smaller.
struct GateWindow {
  Rational start;             // t*
  Rational search_bound;      // window found within [t0, t0 + search_bound]
  int gate_at_window_end = 0; // gate_level(start + 1)
};
GateWindow high_gate_window(const Rational& t0, int min_level);

/// Flow map of the scalar system: pure decay -x, decay with additive input
/// -x + u, or a user-supplied right-hand side.
enum class Flow { Decay, ForcedDecay, Custom };

/// The impulsive system triple: flow map, jump map, impulse-time sequence.
/// Both built-in maps vanish at (x, u) = (0, 0).
struct ImpulsiveSystem {
  Flow flow = Flow::Decay;
  JumpMode jump_mode = JumpMode::TimeVarying;
  ImpulseTimeSequence gamma = ImpulseTimeSequence::dyadic_bursts();
  std::function<double(double, double, double)> custom_flow;           // (t, x, u)
  std::function<double(const Rational&, double, double)> custom_jump;  // (tau, x_minus, u)

  double flow_rhs(double t, double x, double u) const;
  double jump(const Rational& tau, double x_minus, double u) const;
  bool affine_flow() const { return flow != Flow::Custom; }
};

/// System "A": decay flow, sawtooth jump map.
ImpulsiveSystem make_system_a(ImpulseTimeSequence gamma, JumpMode mode = JumpMode::TimeVarying);
/// System "B": forced decay flow -x + u, same jump map.
ImpulsiveSystem make_system_b(ImpulseTimeSequence gamma, JumpMode mode = JumpMode::TimeVarying);

}  // namespace impkit::model
