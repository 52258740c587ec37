// synth.hpp - adversarial input synthesis and the small-energy witness
// experiment it feeds
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <string>
#include <vector>

#include "impkit/rational.hpp"
#include "impkit/report.hpp"
#include "impkit/signals.hpp"

namespace impkit::synth {

/// Output of the input-construction loop. xi holds the state lower bounds
/// xi_0..xi_F (strictly increasing, xi_F >= e^-1 up to rounding); mu holds
/// the pulse amplitudes mu_1..mu_F, each 0 or bar_mu; pulse_indices lists
/// the 1-based steps where mu_k = bar_mu (always starting with step 1).
struct SynthesisResult {
  int n0 = 0;
  double bar_mu = 0.0;
  double delta = 0.0;  // inter-pulse decay exponent, 0 < delta < 1/2
  std::vector<double> xi;
  std::vector<double> mu;
  std::vector<int> pulse_indices;

  int steps() const { return static_cast<int>(mu.size()); }          // F
  int n1() const { return static_cast<int>(pulse_indices.size()); }
  /// Hard termination cap: twice the analytic iteration bound
  /// ceil((e^-1 - e^-n0) / ((1 - e^-1) * bar_mu)).
  long long iteration_bound() const;
};

/// Build the pulse train that drags the state from below delta1 up to e^-1
/// while spending at most delta2 of rho2-energy. Requires
/// 0 < delta1 < e^-1 (larger offsets have the trivial witness) and
/// delta2 > 0. Termination uses a plain IEEE >= e^-1 comparison; when
/// bar_mu = e^(-n0+1) - e^(-n0) the final value equals e^-1 exactly in real
/// arithmetic, so downstream acceptance checks use e^-1 - 1e-12.
SynthesisResult synthesize(double delta1, double delta2, const KFunction& rho2);

/// The assembled witness: run from (start_time, delta1) under atoms mu_k at
/// the burst times of one block, chosen fine enough that the per-step decay
/// stays below delta and the block holds all F pulses.
struct WitnessExperiment {
  int block = 0;          // burst block N
  Rational start_time;    // ramp_start(N)
  double initial_state = 0.0;
  InputSignal input;      // atoms mu_k at burst_time(N, k), k = 1..F
  Rational final_time;    // burst_time(N, F)
  double threshold = 0.0; // e^-1
};

/// Pick the smallest block N with 2^-(N+1) < delta and 2^N > F (or a larger
/// caller-chosen block_override, which is equally valid) and attach the
/// pulses. Guarantees |initial_state| <= delta1 and
/// energy_norm(input, (start, final], bursts, rho1, rho2) <= delta2.
WitnessExperiment assemble(const SynthesisResult& result, double delta1, double delta2,
                           const KFunction& rho1, const KFunction& rho2,
                           int block_override = 0);

/// One full witness run: synthesis, assembly, exact simulation, and the
/// core assertions (x(final) >= e^-1 - 1e-12, energy within budget, per-step
/// domination x(tau_k) >= xi_k). delta1 >= e^-1 short-circuits to the
/// trivial witness x(t0) = delta1. details_json carries
/// {n0, bar_mu, Delta, F, n1, xi, mu, N, t0, t_final, x_final, margin}.
struct WitnessRun {
  bool trivial = false;
  SynthesisResult synthesis;
  WitnessExperiment experiment;
  double x_final = 0.0;
  double energy = 0.0;
  CheckReport checks;
  std::string details_json;
};
WitnessRun run_witness(double delta1, double delta2, const KFunction& rho1,
                       const KFunction& rho2, int block_override = 0);

/// Refutation of a candidate decay bound beta0(r) ~ beta(r, 0) against gain
/// alpha: finds delta with beta0(delta) + delta < alpha(e^-1) by bisection
/// from alpha(e^-1)/2, synthesizes the witness with delta1 = delta2 = delta,
/// and simulates it. Throws when no delta above 1e-6 exists.
struct FalsifyOutcome {
  double delta = 0.0;
  double candidate_bound = 0.0;  // beta0(delta) + delta
  double alpha_at_threshold = 0.0;
  CheckReport report;
  std::string details_json;
};
FalsifyOutcome falsify_iiss_candidate(const KFunction& alpha, const KFunction& beta0,
                                      const KFunction& rho1, const KFunction& rho2);

}  // namespace impkit::synth
