#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "impkit/model.hpp"
#include "impkit/sim.hpp"

using namespace impkit;
using namespace impkit::model;
using namespace impkit::sim;

TEST_CASE("pure decay with no events is the closed-form exponential") {
  auto system = make_system_a(ImpulseTimeSequence::periodic(Rational(5), Rational(1)));
  auto traj = simulate(system, Rational(0), 2.0, InputSignal::zero(), Rational(1));
  CHECK(traj.final_value() == doctest::Approx(0.73575888234288464).epsilon(1e-15));
  CHECK(traj.jumps().empty());
  // interior samples match the independent closed form exactly
  for (int i = 1; i < 10; ++i) {
    Rational t(i, 10);
    CHECK(traj.sample(t) == 2.0 * std::exp(-t.to_double()));
  }
}

TEST_CASE("burst block 1 trace from the origin (frozen oracle recursion)") {
  auto system = make_system_a(ImpulseTimeSequence::dyadic_bursts());
  auto u = burst_input(1);
  auto traj = simulate(system, Rational(0), 0.0, u, Rational(3, 2));
  REQUIRE(traj.jumps().size() == 3);
  CHECK(traj.sample(Rational(1)) == doctest::Approx(0.5621765008857981).epsilon(1e-13));
  CHECK(traj.left_limit(Rational(5, 4)) == doctest::Approx(0.4378234991142019).epsilon(1e-13));
  CHECK(traj.sample(Rational(5, 4)) == doctest::Approx(1.11531825608931).epsilon(1e-13));
  CHECK(traj.left_limit(Rational(3, 2)) == doctest::Approx(0.86861073121618827).epsilon(1e-13));
  CHECK(traj.sample(Rational(3, 2)) == doctest::Approx(1.5621765008857981).epsilon(1e-13));
  CHECK(traj.final_value() == traj.sample(Rational(3, 2)));
  CHECK_THROWS_AS(traj.left_limit(Rational(6, 5)), std::invalid_argument);
  CHECK_THROWS_AS(traj.sample(Rational(2)), std::out_of_range);
}

TEST_CASE("pulsed run inside burst block 4 (frozen oracle recursion)") {
  auto system = make_system_a(ImpulseTimeSequence::dyadic_bursts());
  InputSignal u;
  u.add_atom(burst_time(4, 1), 0.1);
  u.add_atom(burst_time(4, 3), 0.1);
  auto traj = simulate(system, Rational(10), 0.3, u, burst_time(4, 3));
  REQUIRE(traj.jumps().size() == 3);
  CHECK(traj.left_limit(burst_time(4, 1)) ==
        doctest::Approx(0.29076997034290322).epsilon(1e-13));
  CHECK(traj.sample(burst_time(4, 1)) == doctest::Approx(0.46787944117144232).epsilon(1e-13));
  CHECK(traj.left_limit(burst_time(4, 2)) ==
        doctest::Approx(0.45348430411158139).epsilon(1e-13));
  CHECK(traj.sample(burst_time(4, 2)) == doctest::Approx(0.59462286251635779).epsilon(1e-13));
  CHECK(traj.left_limit(burst_time(4, 3)) ==
        doctest::Approx(0.57632824033031192).epsilon(1e-13));
  CHECK(traj.final_value() == doctest::Approx(1.0200022093554392).epsilon(1e-13));
}

TEST_CASE("jumps happen exactly on the sequence inside (t0, t_end]") {
  auto system = make_system_a(ImpulseTimeSequence::dyadic_bursts());
  auto u = burst_input(1);
  // start exactly on a burst time: no jump fires at t0 itself
  auto traj = simulate(system, Rational(1), 0.5, u, Rational(3, 2));
  REQUIRE(traj.jumps().size() == 2);
  CHECK(traj.jumps().front().time == Rational(5, 4));
  CHECK(traj.jumps().back().time == Rational(3, 2));
  CHECK(traj.sample(Rational(1)) == 0.5);
}

TEST_CASE("replay: every stored jump reproduces bit for bit") {
  auto system = make_system_a(ImpulseTimeSequence::dyadic_bursts());
  auto u = burst_input(3);
  auto traj = simulate(system, Rational(0), 0.25, u, Rational(ramp_start(3)) + Rational(1, 2));
  CHECK(!traj.jumps().empty());
  for (const auto& jump : traj.jumps()) {
    CHECK(system.jump(jump.time, jump.x_minus, jump.input) == jump.x_plus);
    CHECK(jump.input == u.value(jump.time));
    CHECK(traj.sample(jump.time) == jump.x_plus);  // right continuity
    CHECK(traj.left_limit(jump.time) == jump.x_minus);
  }
}

TEST_CASE("zero data stays at zero through any sequence") {
  for (auto seq : {ImpulseTimeSequence::dyadic_bursts(),
                   ImpulseTimeSequence::periodic(Rational(1, 10), Rational(1, 10))}) {
    auto traj = simulate(make_system_a(seq), Rational(0), 0.0, InputSignal::zero(), Rational(10));
    CHECK(traj.max_abs_at_events() == 0.0);
    for (int i = 0; i <= 20; ++i) CHECK(traj.sample(Rational(i, 2)) == 0.0);
  }
}

TEST_CASE("forced decay uses the piecewise-constant input between events") {
  auto system = make_system_b(ImpulseTimeSequence::periodic(Rational(10), Rational(1)));
  InputSignal u;
  u.add_piece(Rational(0), Rational(1), 2.0);
  u.add_piece(Rational(1), Rational(2), -1.0);
  auto traj = simulate(system, Rational(0), 0.0, u, Rational(2));
  // closed form per piece: x' = -x + c
  double x1 = 2.0 * (1.0 - std::exp(-1.0));
  CHECK(traj.sample(Rational(1)) == doctest::Approx(x1).epsilon(1e-14));
  double x2 = -1.0 + (x1 + 1.0) * std::exp(-1.0);
  CHECK(traj.final_value() == doctest::Approx(x2).epsilon(1e-14));
}

TEST_CASE("exact and rk4 engines agree to 1e-8") {
  auto system = make_system_b(ImpulseTimeSequence::periodic(Rational(1), Rational(1)));
  InputSignal u;
  u.add_piece(Rational(0), Rational(3, 2), 1.5);
  u.add_piece(Rational(2), Rational(3), -0.75);
  u.add_atom(Rational(2), 0.4);
  auto exact = simulate(system, Rational(0), 0.9, u, Rational(4), Engine::Exact);
  auto rk4 = simulate(system, Rational(0), 0.9, u, Rational(4), Engine::Rk4);
  REQUIRE(exact.jumps().size() == rk4.jumps().size());
  for (std::size_t i = 0; i < exact.jumps().size(); ++i) {
    CHECK(std::fabs(exact.jumps()[i].x_minus - rk4.jumps()[i].x_minus) <= 1e-8);
    CHECK(std::fabs(exact.jumps()[i].x_plus - rk4.jumps()[i].x_plus) <= 1e-8);
  }
  for (int i = 0; i <= 100; ++i) {
    Rational t = Rational(4) * Rational(i, 100);
    CHECK(std::fabs(exact.sample(t) - rk4.sample(t)) <= 1e-8);
  }
}

TEST_CASE("custom flows need the rk4 engine") {
  ImpulsiveSystem system;
  system.flow = Flow::Custom;
  system.custom_flow = [](double, double x, double) { return -x * x; };
  system.gamma = ImpulseTimeSequence::periodic(Rational(1), Rational(1));
  CHECK_THROWS_AS(
      simulate(system, Rational(0), 1.0, InputSignal::zero(), Rational(2), Engine::Exact),
      std::invalid_argument);
  auto traj = simulate(system, Rational(0), 1.0, InputSignal::zero(), Rational(1, 2), Engine::Rk4);
  // dx/dt = -x^2 from 1 gives 1/(1+t)
  CHECK(traj.final_value() == doctest::Approx(1.0 / 1.5).epsilon(1e-10));
}

TEST_CASE("non-finite states are reported with their time") {
  ImpulsiveSystem system = make_system_a(ImpulseTimeSequence::periodic(Rational(1), Rational(1)));
  system.custom_jump = [](const Rational&, double, double) {
    return std::numeric_limits<double>::infinity();
  };
  CHECK_THROWS_WITH_AS(
      simulate(system, Rational(0), 1.0, InputSignal::zero(), Rational(2)),
      doctest::Contains("t = 1"), std::runtime_error);
}

TEST_CASE("csv export: stable header, pre/post rows, exact event times") {
  auto system = make_system_a(ImpulseTimeSequence::dyadic_bursts());
  auto traj = simulate(system, Rational(0), 0.0, burst_input(1), Rational(3, 2));
  std::ostringstream out;
  traj.write_csv(out, 4);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "t,x,kind");
  int pre = 0, post = 0, flow = 0;
  bool saw_exact_jump_time = false;
  std::string previous_kind;
  while (std::getline(in, line)) {
    if (line.find(",pre_jump") != std::string::npos) {
      ++pre;
      previous_kind = "pre";
      if (line.substr(0, 5) == "1.25,") saw_exact_jump_time = true;
    } else if (line.find(",post_jump") != std::string::npos) {
      CHECK(previous_kind == "pre");  // post follows its pre row
      ++post;
      previous_kind = "post";
    } else {
      REQUIRE(line.find(",flow") != std::string::npos);
      ++flow;
      previous_kind = "flow";
    }
  }
  CHECK(pre == 3);
  CHECK(post == 3);
  CHECK(flow > 3);
  CHECK(saw_exact_jump_time);
}
