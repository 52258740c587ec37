// verify.cpp
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#include "impkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "impkit/interval.hpp"
#include "impkit/model.hpp"
#include "impkit/sim.hpp"

namespace impkit::verify {

namespace {

constexpr double kTol = 1e-12;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream per trial index: results do not depend on scheduling.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix(seed ^ splitmix(index + 1)));
}

Rational random_dyadic(std::mt19937_64& rng, const Rational& lo, const Rational& hi) {
  long long lo_ticks = (lo * Rational(256)).ceil();
  long long hi_ticks = (hi * Rational(256)).floor();
  std::uniform_int_distribution<long long> dist(lo_ticks, hi_ticks);
  return Rational::dyadic(dist(rng), 8);
}

ImpulseTimeSequence random_explicit(std::mt19937_64& rng, int count, const Rational& max_time) {
  long long max_ticks = (max_time * Rational(256)).floor();
  std::uniform_int_distribution<long long> dist(1, max_ticks);
  std::set<long long> ticks;
  while (static_cast<int>(ticks.size()) < count) ticks.insert(dist(rng));
  std::vector<Rational> times;
  times.reserve(ticks.size());
  for (long long t : ticks) times.push_back(Rational::dyadic(t, 8));
  return ImpulseTimeSequence::explicit_times(std::move(times));
}

std::string run_tag(const Rational& t0, double x0, const ImpulseTimeSequence& seq) {
  std::ostringstream os;
  os << "t0=" << t0.to_string() << " x0=" << x0 << " seq=" << seq.label();
  return os.str();
}

const KFunction& identity_k() {
  static const KFunction k = KFunction::identity();
  return k;
}

// Bounded-energy/bounded-state inequality along one trajectory with identity
// gains: |x| <= |x0| + integral of |base| + sum of |u(tau)| + 1, checked at
// every post-jump value and at the endpoint (|x| only decays in between).
void check_energy_bound(CheckReport& rep, const sim::Trajectory& traj, const InputSignal& u,
                        const std::string& tag) {
  double running = std::fabs(traj.initial_state()) + 1.0;
  Rational prev = traj.start_time();
  double worst = std::numeric_limits<double>::infinity();
  Rational worst_t = traj.start_time();
  double worst_x = traj.initial_state();
  double worst_bound = running;
  auto consider = [&](const Rational& t, double x, double bound) {
    double margin = bound - std::fabs(x);
    if (margin < worst) {
      worst = margin;
      worst_t = t;
      worst_x = x;
      worst_bound = bound;
    }
  };
  for (const auto& jump : traj.jumps()) {
    running += base_integral(u, Interval::open_closed(prev, jump.time), identity_k());
    running += std::fabs(jump.input);
    consider(jump.time, jump.x_plus, running);
    prev = jump.time;
  }
  running += base_integral(u, Interval::open_closed(prev, traj.end_time()), identity_k());
  consider(traj.end_time(), traj.final_value(), running);
  rep.require(worst, "energy bound at " + tag + " t=" + worst_t.to_string(),
              std::fabs(worst_x), worst_bound);
}

// Zero-input envelope |x(t)| <= e * |x0| along one run; checks left limits,
// post values, the endpoint, and `samples` interior samples.
void check_envelope(CheckReport& rep, const model::ImpulsiveSystem& system, const Rational& t0,
                    double x0, const Rational& horizon, int samples, const std::string& tag) {
  const auto traj = sim::simulate(system, t0, x0, InputSignal::zero(), t0 + horizon);
  const double bound = std::exp(1.0) * std::fabs(x0);
  double worst = std::numeric_limits<double>::infinity();
  Rational worst_t = t0;
  double worst_x = x0;
  auto consider = [&](const Rational& t, double x) {
    double margin = bound - std::fabs(x);
    if (margin < worst) {
      worst = margin;
      worst_t = t;
      worst_x = x;
    }
  };
  for (const auto& jump : traj.jumps()) {
    consider(jump.time, jump.x_minus);
    consider(jump.time, jump.x_plus);
  }
  for (int s = 1; s <= samples; ++s) {
    Rational t = t0 + horizon * Rational(s, samples);
    consider(t, traj.sample(t));
  }
  rep.require(worst, "envelope at " + tag + " t=" + worst_t.to_string(), std::fabs(worst_x),
              bound);
}

CheckReport merge_partials(std::string name, const std::vector<CheckReport>& partials) {
  CheckReport total;
  total.name = std::move(name);
  for (const auto& part : partials) total.merge(part);
  return total;
}

}  // namespace

Grid default_grid(std::uint64_t seed) {
  Grid grid;
  grid.start_times = {Rational(0), Rational(1), Rational(11, 2), Rational(10), Rational(20),
                      Rational(45)};
  const double e2 = std::exp(-2.0);
  for (double magnitude : {1e-3, e2, 0.3, 0.9, 1.0, 5.0}) {
    grid.initial_states.push_back(magnitude);
    grid.initial_states.push_back(-magnitude);
  }
  auto rng = trial_rng(seed, 0);
  grid.sequences.push_back(ImpulseTimeSequence::dyadic_bursts());
  grid.sequences.push_back(ImpulseTimeSequence::periodic(Rational(1), Rational(1)));
  grid.sequences.push_back(ImpulseTimeSequence::periodic(Rational(1, 10), Rational(1, 10)));
  grid.sequences.push_back(random_explicit(rng, 48, Rational(70)));
  grid.horizon = Rational(20);
  return grid;
}

CheckReport check_gus(const Grid& grid, Exec exec) {
  struct Point {
    const Rational* t0;
    double x0;
    const ImpulseTimeSequence* seq;
  };
  std::vector<Point> points;
  for (const auto& t0 : grid.start_times) {
    for (double x0 : grid.initial_states) {
      for (const auto& seq : grid.sequences) points.push_back(Point{&t0, x0, &seq});
    }
  }
  std::vector<CheckReport> partials(points.size());
  parallel_for(points.size(), exec, [&](std::size_t i) {
    const Point& p = points[i];
    const auto system = model::make_system_a(*p.seq);
    CheckReport rep;
    rep.trials = 1;
    check_envelope(rep, system, *p.t0, p.x0, grid.horizon, 200, run_tag(*p.t0, p.x0, *p.seq));
    partials[i] = std::move(rep);
  });
  return merge_partials("check-gus", partials);
}

CheckReport check_settling(const Grid& grid, int k_min, int k_max, Exec exec) {
  struct Point {
    const Rational* t0;
    const ImpulseTimeSequence* seq;
    int k;
    double x0;
  };
  std::vector<Point> points;
  for (const auto& t0 : grid.start_times) {
    for (const auto& seq : grid.sequences) {
      for (int k = k_min; k <= k_max; ++k) {
        const double cap = std::exp(static_cast<double>(-k));
        for (double x0 : {cap, 0.75 * cap, 0.5 * cap, -cap}) {
          points.push_back(Point{&t0, &seq, k, x0});
        }
      }
    }
  }
  std::vector<CheckReport> partials(points.size());
  parallel_for(points.size(), exec, [&](std::size_t i) {
    const Point& p = points[i];
    const auto system = model::make_system_a(*p.seq);
    // settle window: k + 2 + ramp_start(k + 2)
    const Rational window(p.k + 2 + ramp_start(p.k + 2));
    const auto traj =
        sim::simulate(system, *p.t0, p.x0, InputSignal::zero(), *p.t0 + window);
    const double dip = traj.min_abs_at_events();
    const double bound = std::exp(static_cast<double>(-(p.k + 1)));
    CheckReport rep;
    rep.trials = 1;
    rep.require(bound - dip,
                "settle k=" + std::to_string(p.k) + " within T=" + window.to_string() + " at " +
                    run_tag(*p.t0, p.x0, *p.seq),
                dip, bound);
    partials[i] = std::move(rep);
  });
  return merge_partials("check-settling", partials);
}

CheckReport check_ubebs(long long trials, std::uint64_t seed, Exec exec) {
  std::vector<CheckReport> partials(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), exec, [&](std::size_t i) {
    auto rng = trial_rng(seed, i + 1);
    std::uniform_real_distribution<double> state_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> value_dist(-2.0, 2.0);
    std::uniform_int_distribution<int> seq_pick(0, 2);
    std::uniform_int_distribution<int> piece_count(0, 4);
    std::uniform_int_distribution<int> atom_count(0, 8);

    const Rational t0 = random_dyadic(rng, Rational(0), Rational(30));
    const Rational t_end = t0 + Rational(20);
    ImpulseTimeSequence seq = ImpulseTimeSequence::dyadic_bursts();
    switch (seq_pick(rng)) {
      case 0:
        break;
      case 1: {
        Rational first = random_dyadic(rng, Rational(1, 4), Rational(2));
        Rational dwell = random_dyadic(rng, Rational(1, 8), Rational(3, 2));
        seq = ImpulseTimeSequence::periodic(first, dwell);
        break;
      }
      default: {
        std::uniform_int_distribution<int> n(10, 40);
        seq = random_explicit(rng, n(rng), t_end + Rational(5));
        break;
      }
    }

    InputSignal u;
    const int pieces = piece_count(rng);
    if (pieces > 0) {
      std::set<Rational> cuts;
      while (static_cast<int>(cuts.size()) < 2 * pieces) cuts.insert(random_dyadic(rng, t0, t_end));
      auto it = cuts.begin();
      for (int p = 0; p < pieces && it != cuts.end(); ++p) {
        Rational a = *it++;
        if (it == cuts.end()) break;
        Rational b = *it++;
        u.add_piece(a, b, value_dist(rng));
      }
    }
    const auto impulse_times = seq.times_in(Interval::open_closed(t0, t_end));
    if (!impulse_times.empty()) {
      const int atoms = atom_count(rng);
      std::uniform_int_distribution<std::size_t> pick(0, impulse_times.size() - 1);
      for (int a = 0; a < atoms; ++a) u.add_atom(impulse_times[pick(rng)], value_dist(rng));
    }

    const double x0 = state_dist(rng);
    const auto system = model::make_system_a(seq);
    const auto traj = sim::simulate(system, t0, x0, u, t_end);
    CheckReport rep;
    rep.trials = 1;
    check_energy_bound(rep, traj, u, "trial " + std::to_string(i) + " " + run_tag(t0, x0, seq));
    partials[i] = std::move(rep);
  });
  return merge_partials("check-ubebs", partials);
}

CheckReport run_cics_violation(int max_block) {
  if (max_block < 1) throw std::invalid_argument("cics violation needs max_block >= 1");
  const auto gamma = ImpulseTimeSequence::dyadic_bursts();
  const auto system = model::make_system_a(gamma);
  const auto u = model::burst_input(max_block);
  const Rational t_end = Rational(ramp_start(max_block)) + Rational(1, 2);
  const auto traj = sim::simulate(system, Rational(0), 0.0, u, t_end);

  CheckReport rep;
  rep.name = "cics-violation";
  rep.trials = max_block;
  double previous_amplitude = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= max_block; ++n) {
    const Rational block_end = Rational(ramp_start(n)) + Rational(1, 2);
    const double at_block_end = traj.sample(block_end);
    rep.require(at_block_end - (1.0 - kTol),
                "x(block " + std::to_string(n) + " end) >= 1", at_block_end, 1.0);
    const double tail = sup_norm(u, Interval::at_least(Rational(ramp_start(n))), gamma);
    const double amplitude = model::burst_amplitude(n);
    rep.require(kTol - std::fabs(tail - amplitude),
                "sup-norm tail equals block amplitude at N=" + std::to_string(n), tail,
                amplitude, 0.0);
    rep.require(previous_amplitude - amplitude,
                "amplitudes decrease at N=" + std::to_string(n), amplitude,
                previous_amplitude, 0.0);
    previous_amplitude = amplitude;
  }
  // the witness stays bounded, so it sits inside the CICS hypothesis set
  rep.require(3.0 - traj.max_abs_at_events(), "witness bounded by 3", traj.max_abs_at_events(),
              3.0);
  // the same start data under zero input keeps the envelope
  check_envelope(rep, system, Rational(0), 0.0, t_end, 100, "zero-input rerun");
  return rep;
}

CheckReport run_ts_violation(const std::vector<double>& deltas) {
  CheckReport rep;
  rep.name = "ts-violation";
  const auto gamma = ImpulseTimeSequence::dyadic_bursts();
  const auto system = model::make_system_b(gamma);
  const auto system_zero = model::make_system_a(gamma);
  for (double delta : deltas) {
    if (!(delta > 0)) throw std::invalid_argument("ts violation needs positive deltas");
    int block = 1;
    while (model::burst_amplitude(block) >= delta) {
      if (++block > 20) throw std::runtime_error("no desk-scale block with amplitude below delta");
    }
    const auto u = model::burst_input(block);
    const Rational t0(ramp_start(block));
    const Rational t_end = t0 + Rational(1, 2);
    const auto traj = sim::simulate(system, t0, 0.0, u, t_end);
    const double escape = std::fabs(traj.final_value());
    const std::string tag = "delta=" + std::to_string(delta) + " N=" + std::to_string(block);
    rep.trials += 1;
    rep.require(escape - (1.0 - kTol), "|x(s_N+1/2)| >= 1 at " + tag, escape, 1.0);
    const double sup = sup_norm(u, Interval::at_least(t0), gamma);
    rep.require(delta - sup, "input sup norm below delta at " + tag, sup, delta, 0.0);
    // small data, zero input: still inside the envelope
    check_envelope(rep, system_zero, t0, 0.0, Rational(1, 2), 50, "zero-input rerun " + tag);
  }
  return rep;
}

IissOutcome run_iiss_violation(double delta1, double delta2, const KFunction& rho1,
                               const KFunction& rho2, int block_override) {
  auto run = synth::run_witness(delta1, delta2, rho1, rho2, block_override);
  CheckReport rep = run.checks;
  rep.name = "iiss-violation";
  if (!run.trivial) {
    const auto system = model::make_system_a(ImpulseTimeSequence::dyadic_bursts());
    const auto traj =
        sim::simulate(system, run.experiment.start_time, run.experiment.initial_state,
                      run.experiment.input, run.experiment.final_time);
    const std::string tag = "delta1=" + std::to_string(delta1) +
                            " delta2=" + std::to_string(delta2) + " rho2=" + rho2.name();
    check_energy_bound(rep, traj, run.experiment.input, tag);
    check_envelope(rep, system, run.experiment.start_time, run.experiment.initial_state,
                   run.experiment.final_time - run.experiment.start_time, 50,
                   "zero-input rerun " + tag);
  }
  return IissOutcome{std::move(rep), std::move(run.details_json)};
}

}  // namespace impkit::verify
