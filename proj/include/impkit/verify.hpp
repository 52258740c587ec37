// verify.hpp - property checkers for the positive claims and experiment
// drivers for the negative ones
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "impkit/parallel.hpp"
#include "impkit/rational.hpp"
#include "impkit/report.hpp"
#include "impkit/sequences.hpp"
#include "impkit/signals.hpp"
#include "impkit/synth.hpp"

namespace impkit::verify {

/// Shared sweep domain for the zero-input checkers. The defaults cover
/// staircase cell boundaries, both sawtooth branches and magnitudes on both
/// sides of 1; the explicit sequence is pseudo-random but fixed by the seed.
struct Grid {
  std::vector<Rational> start_times;
  std::vector<double> initial_states;
  std::vector<ImpulseTimeSequence> sequences;
  Rational horizon = 20;
};
Grid default_grid(std::uint64_t seed = 0x1209EU);

/// Zero-input envelope check: |x(t)| <= e * |x0| at every jump (left and
/// post value), at the endpoint, and at 200 samples per run.
CheckReport check_gus(const Grid& grid = default_grid(), Exec exec = Exec::Parallel);

/// Zero-input settling check: from |x0| <= e^-k the trajectory dips below
/// e^-(k+1) within k + 2 + ramp_start(k+2) time units, for k in
/// [k_min, k_max].
CheckReport check_settling(const Grid& grid = default_grid(), int k_min = 0, int k_max = 3,
                           Exec exec = Exec::Parallel);

/// Randomized bounded-energy/bounded-state check of
/// |x(t)| <= |x0| + energy(u, (t0, t]) + 1 with identity gains, over seeded
/// random sequences, inputs, and initial data. Deterministic per seed.
CheckReport check_ubebs(long long trials, std::uint64_t seed, Exec exec = Exec::Parallel);

/// Vanishing-input divergence: from (0, 0) under the burst input, the state
/// returns to >= 1 at every block end s_N + 1/2, N = 1..max_block, while the
/// input's sup-norm tail decreases to zero; also certifies the trajectory
/// stays bounded (|x| <= 3) and that the zero-input rerun keeps the
/// envelope.
CheckReport run_cics_violation(int max_block);

/// Total-stability refutation: for each delta, pick the first block with
/// amplitude below delta and show the forced-decay system reaches |x| >= 1
/// from (s_N, 0) although |x0| and the input sup norm are below delta.
CheckReport run_ts_violation(const std::vector<double>& deltas);

/// Small-energy divergence pipeline: synthesize -> assemble -> simulate;
/// asserts |x0| <= delta1, energy <= delta2, x(final) >= e^-1 - 1e-12, the
/// per-step domination x(tau_k) >= xi_k, and the zero-input rerun envelope.
/// details_json carries {n0, bar_mu, Delta, F, n1, xi, mu, N, t0, t_final,
/// x_final, margin}.
struct IissOutcome {
  CheckReport report;
  std::string details_json;
};
IissOutcome run_iiss_violation(double delta1, double delta2, const KFunction& rho1,
                               const KFunction& rho2, int block_override = 0);

}  // namespace impkit::verify
