// model.cpp
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#include "impkit/model.hpp"

#include <cmath>
#include <stdexcept>

namespace impkit::model {

namespace {

constexpr double kSnapTol = 1e-9;
constexpr int kMaxBurstInputBlock = 20;  // ~2^21 atoms; enough for any desk run

long long ramp_index_at_or_before(const Rational& t) {
  long long j = 0;
  while (Rational(ramp_start(j + 1)) <= t) ++j;
  return j;
}

}  // namespace

int gate_level(const Rational& t) {
  if (t < Rational(0)) throw std::domain_error("gate_level needs t >= 0");
  long long j = ramp_index_at_or_before(t);
  long long level = (t - Rational(ramp_start(j))).floor();
  // t < ramp_start(j+1) = ramp_start(j) + (j+1), so 0 <= level <= j
  return static_cast<int>(level);
}

double snapped_log(double r) {
  double l = std::log(r);
  double nearest_half = std::round(2.0 * l) / 2.0;
  if (std::fabs(l - nearest_half) <= kSnapTol * std::max(1.0, std::fabs(l))) {
    return nearest_half;
  }
  return l;
}

double sawtooth_lift(double r) {
  if (r < 0) throw std::domain_error("sawtooth_lift needs r >= 0");
  if (r == 0.0) return 0.0;
  double l = snapped_log(r);
  double c = std::ceil(l);
  if (c - 0.5 < l && l <= 0.0) return std::exp(c);
  if (l <= c - 0.5 && c - 0.5 <= 0.0) return (1.0 + std::exp(0.5)) * r - std::exp(c - 0.5);
  return r;
}

double gated_lift(const Rational& t, double state, JumpMode mode) {
  int gate = mode == JumpMode::TimeInvariant ? 0 : gate_level(t);
  double magnitude = std::fabs(state);
  double threshold = gate == 0 ? 1.0 : std::exp(static_cast<double>(-gate));
  return magnitude <= threshold ? sawtooth_lift(magnitude) : magnitude;
}

double jump_map(const Rational& t, double state, double input, JumpMode mode) {
  return gated_lift(t, state, mode) + input;
}

double burst_amplitude(int block) {
  if (block < 1) throw std::invalid_argument("burst blocks start at 1");
  double spacing = std::ldexp(1.0, -(block + 1));  // 2^-(block+1)
  return std::expm1(-spacing) / std::expm1(-0.5);
}

Rational burst_time(int block, long long k) {
  if (block < 1) throw std::invalid_argument("burst blocks start at 1");
  if (k < 0 || k > (1LL << block)) throw std::invalid_argument("burst tick out of block range");
  return Rational(ramp_start(block)) + Rational::dyadic(k, block + 1);
}

ImpulseTimeSequence dyadic_bursts() { return ImpulseTimeSequence::dyadic_bursts(); }

InputSignal burst_input(int max_block) {
  if (max_block < 1) throw std::invalid_argument("burst input needs at least one block");
  if (max_block > kMaxBurstInputBlock) {
    throw std::invalid_argument("burst input truncation beyond block 20 is not desk scale");
  }
  InputSignal u;
  for (int n = 1; n <= max_block; ++n) {
    double amplitude = burst_amplitude(n);
    for (long long k = 0; k <= (1LL << n); ++k) {
      u.add_atom(burst_time(n, k), amplitude);
    }
  }
  u.set_known_until(Rational(ramp_start(max_block)) + Rational(1, 2));
  return u;
}

GateWindow high_gate_window(const Rational& t0, int min_level) {
  if (t0 < Rational(0)) throw std::domain_error("high_gate_window needs t0 >= 0");
  if (min_level < 0) throw std::invalid_argument("high_gate_window needs min_level >= 0");
  const long long k = min_level;
  const Rational search_bound(k + 1 + ramp_start(k + 2));
  Rational start;
  if (t0 <= search_bound) {
    start = search_bound;
  } else {
    long long kappa = ramp_index_at_or_before(t0);  // >= k + 2 here
    if (t0 <= Rational(ramp_start(kappa) + k + 1)) {
      start = Rational(ramp_start(kappa) + k + 1);
    } else if (t0 <= Rational(ramp_start(kappa + 1) - 1)) {
      start = t0;
    } else {
      start = Rational(ramp_start(kappa + 1) + k + 1);
    }
  }
  return GateWindow{start, search_bound, gate_level(start + Rational(1))};
}

double ImpulsiveSystem::flow_rhs(double t, double x, double u) const {
  switch (flow) {
    case Flow::Decay:
      return -x;
    case Flow::ForcedDecay:
      return -x + u;
    case Flow::Custom:
      return custom_flow(t, x, u);
  }
  throw std::logic_error("unreachable");
}

double ImpulsiveSystem::jump(const Rational& tau, double x_minus, double u) const {
  if (custom_jump) return custom_jump(tau, x_minus, u);
  return jump_map(tau, x_minus, u, jump_mode);
}

ImpulsiveSystem make_system_a(ImpulseTimeSequence gamma, JumpMode mode) {
  ImpulsiveSystem sys;
  sys.flow = Flow::Decay;
  sys.jump_mode = mode;
  sys.gamma = std::move(gamma);
  return sys;
}

ImpulsiveSystem make_system_b(ImpulseTimeSequence gamma, JumpMode mode) {
  ImpulsiveSystem sys;
  sys.flow = Flow::ForcedDecay;
  sys.jump_mode = mode;
  sys.gamma = std::move(gamma);
  return sys;
}

}  // namespace impkit::model
