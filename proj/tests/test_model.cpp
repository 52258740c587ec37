#include <cmath>
#include <vector>

#include "doctest.h"
#include "impkit/model.hpp"

using namespace impkit;
using namespace impkit::model;

namespace {

// Independent staircase oracle: concatenate the ramps 1; 1,2; 1,2,3; ... and
// read level (value - 1) off the unit cell [i-1, i).
int staircase_oracle(const Rational& t) {
  long long cell = t.floor();  // t lives in [cell, cell+1)
  long long index = 0;
  for (long long ramp = 1;; ++ramp) {
    for (long long step = 1; step <= ramp; ++step) {
      if (index == cell) return static_cast<int>(step - 1);
      ++index;
    }
  }
}

}  // namespace

TEST_CASE("gate level agrees with the concatenated-ramp oracle") {
  CHECK(gate_level(Rational(1, 2)) == 0);
  CHECK(gate_level(Rational(11, 2)) == 2);
  CHECK(gate_level(Rational(10)) == 0);  // cell start of ramp 4
  for (long long cell = 0; cell < 120; ++cell) {
    Rational probe = Rational(cell) + Rational(1, 4);
    CHECK(gate_level(probe) == staircase_oracle(probe));
    CHECK(gate_level(Rational(cell)) == staircase_oracle(Rational(cell)));
  }
}

TEST_CASE("sawtooth lift reproduces the hand values") {
  CHECK(sawtooth_lift(0.0) == 0.0);
  CHECK(sawtooth_lift(2.0) == 2.0);  // identity above 1
  CHECK(sawtooth_lift(0.5) == doctest::Approx(0.71782997563743065).epsilon(1e-14));
  CHECK(sawtooth_lift(std::exp(-0.25)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sawtooth_lift(1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sawtooth lift is continuous across its breakpoints") {
  const double eps = 1e-7;
  const double lipschitz = 1.0 + std::exp(0.5);
  for (int m = 0; m >= -6; --m) {
    for (double anchor : {std::exp(static_cast<double>(m)), std::exp(m - 0.5)}) {
      double mid = sawtooth_lift(anchor);
      CHECK(std::fabs(sawtooth_lift(anchor + eps) - mid) <= 3 * lipschitz * eps);
      if (anchor - eps > 0) {
        CHECK(std::fabs(sawtooth_lift(anchor - eps) - mid) <= 3 * lipschitz * eps);
      }
    }
  }
}

TEST_CASE("sawtooth lift sits between the identity and the next power of e") {
  for (int i = 1; i <= 10000; ++i) {
    double r = std::exp(-9.0 + 9.0 * static_cast<double>(i) / 10000.0);  // log-spaced in (0, 1]
    double lifted = sawtooth_lift(r);
    double roof = std::exp(std::ceil(snapped_log(r)));
    CHECK(lifted >= r - 1e-12);
    CHECK(lifted <= roof + 1e-12);
  }
}

TEST_CASE("jump map branches on the gate threshold") {
  CHECK(jump_map(Rational(0), 0.5, 0.0, JumpMode::TimeVarying) ==
        doctest::Approx(0.71782997563743065).epsilon(1e-14));
  // gate level 2 at t=5.5 puts the threshold at e^-2 < 0.5: identity branch
  CHECK(jump_map(Rational(11, 2), 0.5, 0.0, JumpMode::TimeVarying) == 0.5);
  // but the time-invariant mode still lifts
  CHECK(jump_map(Rational(11, 2), 0.5, 0.0, JumpMode::TimeInvariant) ==
        doctest::Approx(0.71782997563743065).epsilon(1e-14));
  for (const Rational& t : {Rational(0), Rational(11, 2), Rational(100)}) {
    CHECK(jump_map(t, 0.0, 0.0, JumpMode::TimeVarying) == 0.0);
  }
}

TEST_CASE("jump map is nondecreasing in |state| and additive above 1") {
  for (const Rational& t : {Rational(0), Rational(7, 2), Rational(11, 2), Rational(10)}) {
    double previous = -1.0;
    for (int i = 0; i <= 400; ++i) {
      double magnitude = 0.01 * i;
      double value = jump_map(t, magnitude, 0.25, JumpMode::TimeVarying);
      CHECK(value >= previous - 1e-12);
      previous = value;
      if (magnitude >= 1.0) CHECK(value == doctest::Approx(magnitude + 0.25).epsilon(1e-14));
      // sign of the state is irrelevant
      CHECK(jump_map(t, -magnitude, 0.25, JumpMode::TimeVarying) == value);
    }
  }
}

TEST_CASE("burst amplitudes and the telescoping sum identity") {
  CHECK(burst_amplitude(1) == doctest::Approx(0.5621765008857981).epsilon(1e-14));
  CHECK(burst_amplitude(2) == doctest::Approx(0.29863342676099574).epsilon(1e-14));
  CHECK(burst_amplitude(3) == doctest::Approx(0.15398134233857998).epsilon(1e-14));
  CHECK(burst_amplitude(4) == doctest::Approx(0.078193552517168694).epsilon(1e-14));
  for (int n = 1; n <= 12; ++n) {
    double spacing = std::ldexp(1.0, -(n + 1));
    double sum = 0.0;
    for (long long j = (1LL << n) - 1; j >= 0; --j) sum += std::exp(-spacing * j);
    CHECK(burst_amplitude(n) * sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("burst input carries one amplitude per block") {
  auto u = burst_input(4);
  CHECK(u.value(Rational(5, 4)) == doctest::Approx(0.5621765008857981).epsilon(1e-14));
  CHECK(u.value(Rational(2)) == 0.0);
  CHECK(u.value(burst_time(4, 16)) == doctest::Approx(burst_amplitude(4)).epsilon(1e-15));
  std::size_t expected = 0;
  for (int n = 1; n <= 4; ++n) expected += (1ULL << n) + 1;
  CHECK(u.atoms().size() == expected);
  REQUIRE(u.known_until().has_value());
  CHECK(*u.known_until() == Rational(ramp_start(4)) + Rational(1, 2));
}

TEST_CASE("every burst time has gate level zero") {
  auto seq = dyadic_bursts();
  auto times = seq.times_in(
      Interval::open_closed(Rational(0), Rational(ramp_start(8)) + Rational(1, 2)));
  for (const auto& tau : times) CHECK(gate_level(tau) == 0);
}

TEST_CASE("high-gate window examples") {
  auto w0 = high_gate_window(Rational(0), 0);
  CHECK(w0.start == Rational(4));
  CHECK(w0.search_bound == Rational(4));
  auto w20 = high_gate_window(Rational(20), 0);
  CHECK(w20.start == Rational(20));
  CHECK(gate_level(Rational(20)) == 5);
}

TEST_CASE("high-gate window guarantee on a start-time/level grid") {
  const std::vector<Rational> starts = {Rational(0),      Rational(1),   Rational(33, 10),
                                        Rational(11, 2),  Rational(10),  Rational(17),
                                        Rational(20),     Rational(29),  Rational(45),
                                        Rational(101, 2), Rational(60),  Rational(77),
                                        Rational(100),    Rational(120), Rational(151),
                                        Rational(200),    Rational(290), Rational(333),
                                        Rational(404),    Rational(1000)};
  for (const auto& t0 : starts) {
    for (int level = 0; level <= 3; ++level) {
      auto window = high_gate_window(t0, level);
      CHECK(window.start >= t0);
      CHECK(window.start <= t0 + window.search_bound);
      CHECK(window.search_bound == Rational(level + 1 + ramp_start(level + 2)));
      // sampled over the half-open window; the closed endpoint is only reported
      for (int i = 0; i < 64; ++i) {
        CHECK(gate_level(window.start + Rational(i, 64)) >= level + 1);
      }
      CHECK(window.gate_at_window_end == gate_level(window.start + Rational(1)));
    }
  }
}

TEST_CASE("system factories expose the two flows over a shared jump map") {
  auto a = make_system_a(dyadic_bursts());
  auto b = make_system_b(dyadic_bursts());
  CHECK(a.flow_rhs(0.0, 2.0, 7.0) == -2.0);   // input-independent
  CHECK(b.flow_rhs(0.0, 2.0, 7.0) == 5.0);    // -x + u
  CHECK(a.flow_rhs(0.0, 0.0, 0.0) == 0.0);
  CHECK(a.jump(Rational(1), 0.0, 0.0) == 0.0);
  CHECK(a.jump(Rational(1), 0.3, 0.1) == b.jump(Rational(1), 0.3, 0.1));
}
