// cli.cpp
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#include "impkit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "impkit/interval.hpp"
#include "impkit/model.hpp"
#include "impkit/parallel.hpp"
#include "impkit/report.hpp"
#include "impkit/sim.hpp"
#include "impkit/synth.hpp"
#include "impkit/verify.hpp"

namespace impkit::cli {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_deltas(const std::vector<double>& deltas) {
  std::string out;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (i) out += ',';
    out += fmt(deltas[i]);
  }
  return out;
}

std::vector<double> split_deltas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(std::stod(token));
  }
  return out;
}

std::string resolve_path(const RunConfig& cfg, const std::string& path) {
  if (path.empty() || cfg.outdir.empty() || path.front() == '/') return path;
  return cfg.outdir + "/" + path;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << body;
}

void write_csv_file(const std::string& path, const sim::Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  traj.write_csv(out);
}

model::JumpMode parse_jump_mode(const std::string& spec) {
  if (spec == "tv") return model::JumpMode::TimeVarying;
  if (spec == "ti") return model::JumpMode::TimeInvariant;
  throw std::invalid_argument("jump mode must be tv or ti, got '" + spec + "'");
}

sim::Engine parse_engine(const std::string& spec) {
  if (spec == "exact") return sim::Engine::Exact;
  if (spec == "rk4") return sim::Engine::Rk4;
  throw std::invalid_argument("engine must be exact or rk4, got '" + spec + "'");
}

model::ImpulsiveSystem parse_system(const std::string& name, const std::string& gamma,
                                    const std::string& jump) {
  auto seq = parse_sequence(gamma);
  auto mode = parse_jump_mode(jump);
  if (name == "A" || name == "a") return model::make_system_a(std::move(seq), mode);
  if (name == "B" || name == "b") return model::make_system_b(std::move(seq), mode);
  throw std::invalid_argument("system must be A or B, got '" + name + "'");
}

int run_selftest(std::ostream& out, Exec exec) {
  int failures = 0;
  auto line = [&](bool ok, const std::string& what) {
    out << (ok ? "[PASS] " : "[FAIL] ") << what << '\n';
    if (!ok) ++failures;
  };

  // block amplitude times its geometric sum telescopes to exactly 1
  double worst_identity = 0.0;
  for (int n = 1; n <= 12; ++n) {
    const double spacing = std::ldexp(1.0, -(n + 1));
    double sum = 0.0;
    for (long long j = 0; j < (1LL << n); ++j) sum += std::exp(-spacing * static_cast<double>(j));
    worst_identity = std::max(worst_identity,
                              std::fabs(model::burst_amplitude(n) * sum - 1.0));
  }
  line(worst_identity <= 1e-12,
       "amplitude-sum identity for blocks 1..12 (worst " + fmt(worst_identity) + ")");

  // sawtooth stays between the identity and the next power of e
  bool lift_ok = true;
  for (int i = 1; i <= 10000; ++i) {
    const double r = std::exp(-8.0 * (1.0 - static_cast<double>(i) / 10000.0));
    const double lifted = model::sawtooth_lift(r);
    const double roof = std::exp(std::ceil(model::snapped_log(r)));
    if (lifted < r - 1e-12 || lifted > roof + 1e-12) lift_ok = false;
  }
  line(lift_ok, "sawtooth lift bounds on 10^4 log-spaced points");

  // every burst time sits at gate level 0
  bool gates_ok = true;
  const auto bursts = ImpulseTimeSequence::dyadic_bursts();
  for (const auto& tau :
       bursts.times_in(Interval::open_closed(Rational(0), Rational(ramp_start(8)) + Rational(1, 2)))) {
    if (model::gate_level(tau) != 0) gates_ok = false;
  }
  line(gates_ok, "gate level 0 at every burst time through block 8");

  // time-invariant jump mode agrees bit for bit on a burst trajectory
  {
    const auto u = model::burst_input(3);
    const Rational t_end = Rational(ramp_start(3)) + Rational(1, 2);
    const auto tv = sim::simulate(model::make_system_a(bursts, model::JumpMode::TimeVarying),
                                  Rational(0), 0.0, u, t_end);
    const auto ti = sim::simulate(model::make_system_a(bursts, model::JumpMode::TimeInvariant),
                                  Rational(0), 0.0, u, t_end);
    bool same = tv.jumps().size() == ti.jumps().size();
    for (std::size_t i = 0; same && i < tv.jumps().size(); ++i) {
      same = tv.jumps()[i].x_plus == ti.jumps()[i].x_plus &&
             tv.jumps()[i].x_minus == ti.jumps()[i].x_minus;
    }
    line(same, "time-invariant jump mode matches time-varying on burst trajectory");
  }

  // closed-form and rk4 integration agree
  {
    const auto system = model::make_system_a(ImpulseTimeSequence::periodic(Rational(1), Rational(1)));
    InputSignal u;
    u.add_atom(Rational(2), 0.4);
    const auto exact = sim::simulate(system, Rational(0), 0.9, u, Rational(5), sim::Engine::Exact);
    const auto rk4 = sim::simulate(system, Rational(0), 0.9, u, Rational(5), sim::Engine::Rk4);
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.jumps().size(); ++i) {
      worst = std::max(worst,
                       std::fabs(exact.jumps()[i].x_plus - rk4.jumps()[i].x_plus));
    }
    line(worst <= 1e-8, "exact and rk4 engines agree (worst " + fmt(worst) + ")");
  }

  // the reference witness reproduces
  {
    const auto witness = synth::run_witness(0.3, 0.2, KFunction::identity(), KFunction::identity());
    line(witness.checks.pass() && witness.synthesis.steps() == 3 && witness.synthesis.n1() == 2,
         "reference small-energy witness (F=" + std::to_string(witness.synthesis.steps()) +
             ", x_final=" + fmt(witness.x_final) + ")");
  }

  // quick sweep sanity under the requested execution policy
  {
    verify::Grid grid;
    grid.start_times = {Rational(0), Rational(11, 2)};
    grid.initial_states = {0.9, -0.9, 5.0};
    grid.sequences = {bursts, ImpulseTimeSequence::periodic(Rational(1), Rational(1))};
    grid.horizon = Rational(8);
    const auto report = verify::check_gus(grid, exec);
    line(report.pass(), report.summary());
  }

  out << (failures == 0 ? "selftest: all checks passed\n"
                        : "selftest: " + std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

RunConfig parse_config_file(std::istream& in) {
  RunConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::istringstream probe(line);
      std::string leftover;
      if (probe >> leftover) throw std::invalid_argument("config line without '=': " + line);
      continue;
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "subcommand") cfg.subcommand = value;
    else if (key == "system") cfg.system = value;
    else if (key == "gamma") cfg.gamma = value;
    else if (key == "jump") cfg.jump = value;
    else if (key == "t0") cfg.t0 = value;
    else if (key == "x0") cfg.x0 = std::stod(value);
    else if (key == "tend") cfg.tend = value;
    else if (key == "input") cfg.input = value;
    else if (key == "engine") cfg.engine = value;
    else if (key == "nmax") cfg.nmax = std::stoi(value);
    else if (key == "deltas") cfg.deltas = split_deltas(value);
    else if (key == "delta1") cfg.delta1 = std::stod(value);
    else if (key == "delta2") cfg.delta2 = std::stod(value);
    else if (key == "rho1") cfg.rho1 = value;
    else if (key == "rho2") cfg.rho2 = value;
    else if (key == "alpha") cfg.alpha = value;
    else if (key == "beta0") cfg.beta0 = value;
    else if (key == "block_override") cfg.block_override = std::stoi(value);
    else if (key == "trials") cfg.trials = std::stoll(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "horizon") cfg.horizon = value;
    else if (key == "serial") cfg.serial = value == "1" || value == "true";
    else if (key == "out") cfg.out = value;
    else if (key == "json") cfg.json_out = value;
    else if (key == "outdir") cfg.outdir = value;
    else throw std::invalid_argument("unknown config key: '" + key + "'");
  }
  return cfg;
}

void dump_config(const RunConfig& cfg, std::ostream& out) {
  out << "subcommand=" << cfg.subcommand << '\n'
      << "system=" << cfg.system << '\n'
      << "gamma=" << cfg.gamma << '\n'
      << "jump=" << cfg.jump << '\n'
      << "t0=" << cfg.t0 << '\n'
      << "x0=" << fmt(cfg.x0) << '\n'
      << "tend=" << cfg.tend << '\n'
      << "input=" << cfg.input << '\n'
      << "engine=" << cfg.engine << '\n'
      << "nmax=" << cfg.nmax << '\n'
      << "deltas=" << join_deltas(cfg.deltas) << '\n'
      << "delta1=" << fmt(cfg.delta1) << '\n'
      << "delta2=" << fmt(cfg.delta2) << '\n'
      << "rho1=" << cfg.rho1 << '\n'
      << "rho2=" << cfg.rho2 << '\n'
      << "alpha=" << cfg.alpha << '\n'
      << "beta0=" << cfg.beta0 << '\n'
      << "block_override=" << cfg.block_override << '\n'
      << "trials=" << cfg.trials << '\n'
      << "seed=" << cfg.seed << '\n'
      << "horizon=" << cfg.horizon << '\n'
      << "serial=" << (cfg.serial ? 1 : 0) << '\n'
      << "out=" << cfg.out << '\n'
      << "json=" << cfg.json_out << '\n'
      << "outdir=" << cfg.outdir << '\n';
}

ImpulseTimeSequence parse_sequence(const std::string& spec) {
  if (spec == "gammastar") return ImpulseTimeSequence::dyadic_bursts();
  if (spec.rfind("periodic:", 0) == 0) {
    const std::string rest = spec.substr(9);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("periodic sequence spec: periodic:<first>:<dwell>");
    }
    return ImpulseTimeSequence::periodic(Rational::parse(rest.substr(0, colon)),
                                         Rational::parse(rest.substr(colon + 1)));
  }
  if (spec.rfind("file:", 0) == 0) return ImpulseTimeSequence::load_file(spec.substr(5));
  if (spec.rfind("explicit:", 0) == 0) {
    std::vector<Rational> times;
    std::stringstream ss(spec.substr(9));
    std::string token;
    while (std::getline(ss, token, ',')) times.push_back(Rational::parse(token));
    return ImpulseTimeSequence::explicit_times(std::move(times));
  }
  throw std::invalid_argument("unknown sequence spec: '" + spec + "'");
}

InputSignal parse_input(const std::string& spec) {
  if (spec == "zero") return InputSignal::zero();
  if (spec.rfind("ustar:", 0) == 0) return model::burst_input(std::stoi(spec.substr(6)));
  if (spec.rfind("file:", 0) == 0) return InputSignal::load_file(spec.substr(5));
  throw std::invalid_argument("unknown input spec: '" + spec + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  // config file first, flags override
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
    }
    if (!path.empty()) {
      std::ifstream in(path);
      if (!in) {
        err << "cannot open config file: " << path << '\n';
        return 2;
      }
      try {
        cfg = parse_config_file(in);
      } catch (const std::exception& e) {
        err << e.what() << '\n';
        return 2;
      }
      break;
    }
  }

  std::string config_path;
  std::string dump_path;
  CLI::App app{"impkit: scalar impulsive systems with inputs - simulation and desk-scale "
               "stability verification"};
  app.add_option("subcommand", cfg.subcommand,
                 "simulate|cics|ts|iiss|falsify|guas|ubebs|selftest");
  app.add_option("--config", config_path, "flat key=value config file (flags override)");
  app.add_option("--dump-config", dump_path, "write the effective configuration and proceed");
  app.add_option("--system", cfg.system, "A (decay flow) or B (decay plus input)");
  app.add_option("--gamma", cfg.gamma, "gammastar | periodic:f:d | file:PATH | explicit:t1,..");
  app.add_option("--jump", cfg.jump, "jump mode: tv | ti");
  app.add_option("--t0", cfg.t0, "start time (rational)");
  app.add_option("--x0", cfg.x0, "initial state");
  app.add_option("--tend", cfg.tend, "end time (rational)");
  app.add_option("--input", cfg.input, "zero | ustar:N | file:PATH");
  app.add_option("--engine", cfg.engine, "exact | rk4");
  app.add_option("--nmax", cfg.nmax, "number of burst blocks to drive");
  app.add_option("--delta", cfg.deltas, "smallness levels for ts")->delimiter(',');
  app.add_option("--delta1", cfg.delta1, "initial-state budget");
  app.add_option("--delta2", cfg.delta2, "energy budget");
  app.add_option("--rho1", cfg.rho1, "integral gain: id|r2|r3|pow:p|scale:c:p");
  app.add_option("--rho2", cfg.rho2, "impulse gain: id|r2|r3|pow:p|scale:c:p");
  app.add_option("--alpha", cfg.alpha, "candidate state gain to falsify");
  app.add_option("--beta0", cfg.beta0, "candidate decay bound at zero elapsed time (may be zero)");
  app.add_option("--block-override", cfg.block_override, "use a larger burst block than minimal");
  app.add_option("--trials", cfg.trials, "randomized trial count");
  app.add_option("--seed", cfg.seed, "randomized suite seed");
  app.add_option("--horizon", cfg.horizon, "sweep horizon (rational)");
  app.add_flag("--serial", cfg.serial, "run sweeps on the serial reference path");
  app.add_option("--out", cfg.out, "trajectory CSV path");
  app.add_option("--json", cfg.json_out, "JSON report path");
  app.add_option("--outdir", cfg.outdir, "output directory (default $IMPKIT_OUTDIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  if (cfg.outdir.empty()) {
    if (const char* env = std::getenv("IMPKIT_OUTDIR")) cfg.outdir = env;
  }

  try {
    if (!dump_path.empty()) {
      std::ofstream dump(dump_path);
      if (!dump) throw std::invalid_argument("cannot open dump path: " + dump_path);
      dump_config(cfg, dump);
      if (cfg.subcommand.empty()) return 0;
    }
    if (cfg.subcommand.empty()) {
      err << "missing subcommand\n" << app.help();
      return 2;
    }
    const Exec exec = cfg.serial ? Exec::Serial : Exec::Parallel;

    if (cfg.subcommand == "simulate") {
      const auto system = parse_system(cfg.system, cfg.gamma, cfg.jump);
      const auto u = parse_input(cfg.input);
      const auto traj = sim::simulate(system, Rational::parse(cfg.t0), cfg.x0, u,
                                      Rational::parse(cfg.tend), parse_engine(cfg.engine));
      out << "x(" << traj.end_time().to_decimal_string() << ") = " << fmt(traj.final_value())
          << " after " << traj.jumps().size() << " jump(s)\n";
      if (!cfg.out.empty()) write_csv_file(resolve_path(cfg, cfg.out), traj);
      if (!cfg.json_out.empty()) {
        write_text_file(resolve_path(cfg, cfg.json_out),
                        std::string("{\n  \"t_end\": ") + fmt(traj.end_time().to_double()) +
                            ",\n  \"x_final\": " + fmt(traj.final_value()) +
                            ",\n  \"jumps\": " + std::to_string(traj.jumps().size()) + "\n}\n");
      }
      return 0;
    }
    if (cfg.subcommand == "cics") {
      const auto report = verify::run_cics_violation(cfg.nmax);
      out << report.summary() << '\n';
      if (!cfg.out.empty()) {
        const auto system = model::make_system_a(ImpulseTimeSequence::dyadic_bursts());
        const auto traj = sim::simulate(system, Rational(0), 0.0, model::burst_input(cfg.nmax),
                                        Rational(ramp_start(cfg.nmax)) + Rational(1, 2));
        write_csv_file(resolve_path(cfg, cfg.out), traj);
      }
      if (!cfg.json_out.empty()) write_text_file(resolve_path(cfg, cfg.json_out), report.to_json());
      return report.pass() ? 0 : 1;
    }
    if (cfg.subcommand == "ts") {
      const auto report = verify::run_ts_violation(cfg.deltas);
      out << report.summary() << '\n';
      if (!cfg.json_out.empty()) write_text_file(resolve_path(cfg, cfg.json_out), report.to_json());
      return report.pass() ? 0 : 1;
    }
    if (cfg.subcommand == "iiss") {
      const auto outcome =
          verify::run_iiss_violation(cfg.delta1, cfg.delta2, KFunction::from_name(cfg.rho1),
                                     KFunction::from_name(cfg.rho2), cfg.block_override);
      out << outcome.report.summary() << '\n';
      if (!cfg.out.empty()) {
        const auto witness = synth::run_witness(cfg.delta1, cfg.delta2,
                                                KFunction::from_name(cfg.rho1),
                                                KFunction::from_name(cfg.rho2),
                                                cfg.block_override);
        if (!witness.trivial) {
          const auto system = model::make_system_a(ImpulseTimeSequence::dyadic_bursts());
          const auto traj = sim::simulate(system, witness.experiment.start_time,
                                          witness.experiment.initial_state,
                                          witness.experiment.input,
                                          witness.experiment.final_time);
          write_csv_file(resolve_path(cfg, cfg.out), traj);
        }
      }
      if (!cfg.json_out.empty()) {
        write_text_file(resolve_path(cfg, cfg.json_out), outcome.details_json);
      }
      return outcome.report.pass() ? 0 : 1;
    }
    if (cfg.subcommand == "falsify") {
      const auto outcome = synth::falsify_iiss_candidate(
          KFunction::from_name(cfg.alpha), KFunction::from_name(cfg.beta0),
          KFunction::from_name(cfg.rho1), KFunction::from_name(cfg.rho2));
      out << outcome.report.summary() << " delta=" << fmt(outcome.delta) << '\n';
      if (!cfg.json_out.empty()) {
        write_text_file(resolve_path(cfg, cfg.json_out), outcome.details_json);
      }
      return outcome.report.pass() ? 0 : 1;
    }
    if (cfg.subcommand == "guas") {
      auto grid = verify::default_grid(cfg.seed);
      grid.horizon = Rational::parse(cfg.horizon);
      const auto envelope = verify::check_gus(grid, exec);
      const auto settling = verify::check_settling(grid, 0, 3, exec);
      out << envelope.summary() << '\n' << settling.summary() << '\n';
      if (!cfg.json_out.empty()) {
        write_text_file(resolve_path(cfg, cfg.json_out),
                        "[\n" + envelope.to_json() + ",\n" + settling.to_json() + "\n]\n");
      }
      return envelope.pass() && settling.pass() ? 0 : 1;
    }
    if (cfg.subcommand == "ubebs") {
      const auto report = verify::check_ubebs(cfg.trials, cfg.seed, exec);
      out << report.summary() << '\n';
      if (!cfg.json_out.empty()) write_text_file(resolve_path(cfg, cfg.json_out), report.to_json());
      return report.pass() ? 0 : 1;
    }
    if (cfg.subcommand == "selftest") {
      return run_selftest(out, exec);
    }
    err << "unknown subcommand: '" << cfg.subcommand << "'\n" << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 1;
  }
}

}  // namespace impkit::cli
