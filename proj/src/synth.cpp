// synth.cpp
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#include "impkit/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "impkit/interval.hpp"
#include "impkit/model.hpp"
#include "impkit/sim.hpp"
#include "json.hpp"

namespace impkit::synth {

namespace {

constexpr double kTol = 1e-12;

nlohmann::ordered_json witness_details(const WitnessRun& run, double delta1) {
  nlohmann::ordered_json j;
  const double e_inv = std::exp(-1.0);
  j["trivial"] = run.trivial;
  j["n0"] = run.trivial ? 0 : run.synthesis.n0;
  j["bar_mu"] = run.trivial ? 0.0 : run.synthesis.bar_mu;
  j["Delta"] = run.trivial ? 0.0 : run.synthesis.delta;
  j["F"] = run.trivial ? 0 : run.synthesis.steps();
  j["n1"] = run.trivial ? 0 : run.synthesis.n1();
  j["xi"] = run.trivial ? std::vector<double>{delta1} : run.synthesis.xi;
  j["mu"] = run.trivial ? std::vector<double>{} : run.synthesis.mu;
  j["N"] = run.experiment.block;
  j["t0"] = run.experiment.start_time.to_double();
  j["t_final"] = run.experiment.final_time.to_double();
  j["t0_exact"] = run.experiment.start_time.to_string();
  j["t_final_exact"] = run.experiment.final_time.to_string();
  j["x_final"] = run.x_final;
  j["margin"] = run.x_final - e_inv;
  j["energy"] = run.energy;
  return j;
}

}  // namespace

long long SynthesisResult::iteration_bound() const {
  const double e_inv = std::exp(-1.0);
  double bound = std::ceil((e_inv - std::exp(-static_cast<double>(n0))) /
                           ((1.0 - e_inv) * bar_mu));
  // the analytic bound degenerates to 0 at n0 = 1 (a log-snapping boundary
  // where a single pulse still fires); keep a small floor there
  return std::max(2 * static_cast<long long>(bound), 4LL);
}

SynthesisResult synthesize(double delta1, double delta2, const KFunction& rho2) {
  const double e_inv = std::exp(-1.0);
  if (!(delta1 > 0.0) || delta1 >= e_inv) {
    throw std::invalid_argument(
        "synthesize needs 0 < delta1 < e^-1; at or above e^-1 the initial state alone is the "
        "witness");
  }
  if (!(delta2 > 0.0)) throw std::invalid_argument("synthesize needs delta2 > 0");

  SynthesisResult res;
  const double log_d1 = model::snapped_log(delta1);
  res.n0 = static_cast<int>(-std::floor(log_d1));
  res.bar_mu = std::min(rho2.inverse(delta2 / res.n0),
                        std::exp(-static_cast<double>(res.n0) + 1.0) -
                            std::exp(-static_cast<double>(res.n0)));
  const double sqrt_e = std::exp(0.5);
  res.delta = std::min(-std::log1p(-res.bar_mu),
                       std::log1p(sqrt_e * res.bar_mu) - std::log1p(res.bar_mu));
  res.xi.push_back(std::exp(std::floor(log_d1)));

  const long long cap = res.iteration_bound();
  const double decay = std::exp(-res.delta);
  // repeat-until with a plain IEEE termination compare; the exact-equality
  // budget lands the final value on e^-1 itself
  do {
    const double xi_prev = res.xi.back();
    const double shifted = model::snapped_log(xi_prev) - res.delta;
    const long long ell = -static_cast<long long>(std::ceil(shifted));
    const bool pulse =
        -static_cast<double>(ell) - 0.5 <= shifted && shifted <= -static_cast<double>(ell);
    const double mu_k = pulse ? res.bar_mu : 0.0;
    res.mu.push_back(mu_k);
    if (pulse) res.pulse_indices.push_back(static_cast<int>(res.mu.size()));
    res.xi.push_back(model::sawtooth_lift(xi_prev * decay) + mu_k);
    if (static_cast<long long>(res.mu.size()) > cap) {
      throw std::runtime_error(
          "algorithm failed to terminate (exceeded twice the analytic iteration bound)");
    }
  } while (!(res.xi.back() >= e_inv));
  return res;
}

WitnessExperiment assemble(const SynthesisResult& result, double delta1, double delta2,
                           const KFunction& rho1, const KFunction& rho2, int block_override) {
  if (result.steps() < 1) throw std::invalid_argument("assemble needs a nonempty synthesis");
  int minimal = 1;
  while (!(std::ldexp(1.0, -(minimal + 1)) < result.delta &&
           (1LL << minimal) > result.steps())) {
    if (++minimal > 40) throw std::runtime_error("no desk-scale burst block fits the synthesis");
  }
  const int block = block_override > 0 ? block_override : minimal;
  if (block < minimal) {
    throw std::invalid_argument("block_override below the smallest valid block " +
                                std::to_string(minimal));
  }

  WitnessExperiment ex;
  ex.block = block;
  ex.start_time = Rational(ramp_start(block));
  ex.initial_state = delta1;
  ex.final_time = model::burst_time(block, result.steps());
  ex.threshold = std::exp(-1.0);
  for (int k = 1; k <= result.steps(); ++k) {
    if (result.mu[static_cast<std::size_t>(k) - 1] != 0.0) {
      ex.input.add_atom(model::burst_time(block, k), result.mu[static_cast<std::size_t>(k) - 1]);
    }
  }
  ex.input.set_known_until(ex.start_time + Rational(1, 2));

  const double energy = energy_norm(ex.input, Interval::open_closed(ex.start_time, ex.final_time),
                                    ImpulseTimeSequence::dyadic_bursts(), rho1, rho2);
  if (energy > delta2 + kTol) {
    throw std::logic_error("assembled witness exceeds its energy budget");
  }
  if (std::fabs(ex.initial_state) > delta1) {
    throw std::logic_error("assembled witness exceeds its initial-state budget");
  }
  return ex;
}

WitnessRun run_witness(double delta1, double delta2, const KFunction& rho1,
                       const KFunction& rho2, int block_override) {
  const double e_inv = std::exp(-1.0);
  if (!(delta1 > 0.0)) throw std::invalid_argument("run_witness needs delta1 > 0");
  if (!(delta2 > 0.0)) throw std::invalid_argument("run_witness needs delta2 > 0");

  WitnessRun run;
  run.checks.name = "iiss-witness";
  if (delta1 >= e_inv) {
    run.trivial = true;
    run.experiment.initial_state = delta1;
    run.experiment.threshold = e_inv;
    run.x_final = delta1;
    run.energy = 0.0;
    run.checks.trials = 1;
    run.checks.require(run.x_final - (e_inv - kTol), "trivial witness x(t0) >= e^-1 - 1e-12",
                       run.x_final, e_inv - kTol);
    run.details_json = witness_details(run, delta1).dump(2);
    return run;
  }

  run.synthesis = synthesize(delta1, delta2, rho2);
  run.experiment = assemble(run.synthesis, delta1, delta2, rho1, rho2, block_override);
  const auto system = model::make_system_a(ImpulseTimeSequence::dyadic_bursts());
  const auto traj = sim::simulate(system, run.experiment.start_time,
                                  run.experiment.initial_state, run.experiment.input,
                                  run.experiment.final_time, sim::Engine::Exact);
  run.x_final = traj.final_value();
  run.energy = energy_norm(run.experiment.input,
                           Interval::open_closed(run.experiment.start_time,
                                                 run.experiment.final_time),
                           ImpulseTimeSequence::dyadic_bursts(), rho1, rho2);

  auto& rep = run.checks;
  rep.trials = 1;
  rep.require(run.x_final - (e_inv - kTol), "x(t_final) >= e^-1 - 1e-12", run.x_final,
              e_inv - kTol);
  rep.require(delta1 - std::fabs(run.experiment.initial_state), "|x0| <= delta1",
              std::fabs(run.experiment.initial_state), delta1);
  rep.require(delta2 - run.energy, "energy <= delta2", run.energy, delta2);
  // per-step domination: the synthesized xi_k lower-bound the realized states
  const auto& jumps = traj.jumps();
  if (static_cast<int>(jumps.size()) != run.synthesis.steps()) {
    throw std::logic_error("witness trajectory jump count differs from the synthesis length");
  }
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    rep.require(jumps[k].x_plus - run.synthesis.xi[k + 1],
                "x(tau_" + std::to_string(k + 1) + ") >= xi_" + std::to_string(k + 1),
                jumps[k].x_plus, run.synthesis.xi[k + 1]);
  }
  run.details_json = witness_details(run, delta1).dump(2);
  return run;
}

FalsifyOutcome falsify_iiss_candidate(const KFunction& alpha, const KFunction& beta0,
                                      const KFunction& rho1, const KFunction& rho2) {
  const double e_inv = std::exp(-1.0);
  const double target = alpha(e_inv);
  const auto feasible = [&](double d) { return beta0(d) + d < target; };

  // largest feasible offset, bisected starting from target/2
  double lo = 0.0;
  double hi = target;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  if (!(lo > 1e-6)) {
    throw std::runtime_error("candidate too weak to falsify at desk scale");
  }

  FalsifyOutcome out;
  out.delta = lo;
  out.candidate_bound = beta0(lo) + lo;
  out.alpha_at_threshold = target;

  WitnessRun run = run_witness(out.delta, out.delta, rho1, rho2);
  out.report = run.checks;
  out.report.name = "falsify-iiss-candidate";
  out.report.require(target - out.candidate_bound, "beta0(delta) + delta < alpha(e^-1)",
                     out.candidate_bound, target, 0.0);
  // the witness state defeats the candidate bound through the gain
  out.report.require(alpha(std::fabs(run.x_final)) - out.candidate_bound,
                     "alpha(|x(t)|) exceeds the candidate bound",
                     alpha(std::fabs(run.x_final)), out.candidate_bound, 0.0);

  nlohmann::ordered_json details = nlohmann::ordered_json::parse(run.details_json);
  details["delta"] = out.delta;
  details["alpha_at_threshold"] = out.alpha_at_threshold;
  details["candidate_bound"] = out.candidate_bound;
  out.details_json = details.dump(2);
  return out;
}

}  // namespace impkit::synth
