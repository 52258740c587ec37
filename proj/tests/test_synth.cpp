#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "impkit/model.hpp"
#include "impkit/sim.hpp"
#include "impkit/synth.hpp"

using namespace impkit;
using namespace impkit::synth;

namespace {

const double kEInv = std::exp(-1.0);

// Structural facts the loop must satisfy for any admissible budget.
void check_structure(const SynthesisResult& res, double delta2, const KFunction& rho2) {
  CHECK(res.delta > 0.0);
  CHECK(res.delta < 0.5);
  CHECK(res.n1() <= res.n0);
  REQUIRE(!res.pulse_indices.empty());
  CHECK(res.pulse_indices.front() == 1);  // the first step always pulses
  CHECK(res.mu.front() == res.bar_mu);
  const double growth = (1.0 - kEInv) * res.bar_mu;
  for (int k = 1; k <= res.steps(); ++k) {
    CHECK(res.xi[k] - res.xi[k - 1] >= growth - 1e-12);
    const bool pulsed = res.mu[k - 1] != 0.0;
    if (pulsed) CHECK(res.mu[k - 1] == res.bar_mu);
  }
  CHECK(res.xi.back() >= kEInv - 1e-12);
  const long long bound = static_cast<long long>(
      std::ceil((kEInv - std::exp(-static_cast<double>(res.n0))) / growth));
  CHECK(res.steps() <= bound);
  double spent = 0.0;
  for (double mu : res.mu) spent += rho2(mu);
  CHECK(spent <= delta2 + 1e-12);
  // ledger of gate exponents: pulses decrement, idle steps hold
  auto exponent_after = [&](int k) {
    return -static_cast<long long>(std::ceil(model::snapped_log(res.xi[k]) - res.delta));
  };
  std::size_t pulse_cursor = 0;
  for (int k = 1; k <= res.steps(); ++k) {
    const bool pulsed = pulse_cursor < res.pulse_indices.size() &&
                        res.pulse_indices[pulse_cursor] == k;
    if (pulsed) ++pulse_cursor;
    if (k == res.steps()) break;  // ell is only consulted before the next step
    const long long before = exponent_after(k - 1);
    const long long after = exponent_after(k);
    if (pulsed) {
      CHECK(after == before - 1);
    } else {
      CHECK(after == before);
    }
  }
}

}  // namespace

TEST_CASE("reference synthesis (0.3, 0.2, id) matches the frozen oracle trace") {
  auto res = synthesize(0.3, 0.2, KFunction::identity());
  CHECK(res.n0 == 2);
  CHECK(res.bar_mu == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(res.delta == doctest::Approx(0.057301139017368212).epsilon(1e-13));
  REQUIRE(res.steps() == 3);
  CHECK(res.n1() == 2);
  REQUIRE(res.pulse_indices.size() == 2);
  CHECK(res.pulse_indices[0] == 1);
  CHECK(res.pulse_indices[1] == 3);
  CHECK(res.xi[0] == doctest::Approx(0.13533528323661269).epsilon(1e-14));
  CHECK(res.xi[1] == doctest::Approx(0.23533528323661269).epsilon(1e-14));
  CHECK(res.xi[2] == doctest::Approx(0.36549352786548182).epsilon(1e-13));
  CHECK(res.xi[3] == doctest::Approx(0.46787944117144232).epsilon(1e-13));
  CHECK(res.mu[0] == res.bar_mu);
  CHECK(res.mu[1] == 0.0);
  CHECK(res.mu[2] == res.bar_mu);
  check_structure(res, 0.2, KFunction::identity());
}

TEST_CASE("loose budget puts bar_mu on the gap branch and stops in one step") {
  auto res = synthesize(0.3, 1.0, KFunction::identity());
  CHECK(res.bar_mu == doctest::Approx(0.23254415793482963).epsilon(1e-14));
  CHECK(res.steps() == 1);  // xi_1 lands exactly on e^-1 in real arithmetic
  CHECK(res.xi.back() >= kEInv - 1e-12);
  CHECK(res.xi.back() == doctest::Approx(kEInv).epsilon(1e-14));
  check_structure(res, 1.0, KFunction::identity());
}

TEST_CASE("tight budgets stretch the pulse train (0.01, 0.01, id)") {
  auto res = synthesize(0.01, 0.01, KFunction::identity());
  CHECK(res.n0 == 5);
  CHECK(res.bar_mu == doctest::Approx(0.002).epsilon(1e-15));
  CHECK(res.delta == doctest::Approx(0.0012940152367626663).epsilon(1e-12));
  CHECK(res.steps() == 16);
  CHECK(res.n1() == 5);
  check_structure(res, 0.01, KFunction::identity());
  auto ex = assemble(res, 0.01, 0.01, KFunction::identity(), KFunction::identity());
  CHECK(ex.block == 9);
}

TEST_CASE("square impulse gain picks the power-gap branch") {
  auto res = synthesize(0.3, 0.2, KFunction::power(2));
  CHECK(res.bar_mu == doctest::Approx(0.23254415793482963).epsilon(1e-14));
  CHECK(res.steps() == 1);
  CHECK(res.n1() == 1);
  check_structure(res, 0.2, KFunction::power(2));
}

TEST_CASE("structure holds across the budget/gain sweep") {
  for (double d1 : {0.3, 0.1, 0.01}) {
    for (double d2 : {1.0, 0.3, 0.1, 0.01}) {
      for (const char* gain : {"id", "r2", "r3"}) {
        auto rho2 = KFunction::from_name(gain);
        auto res = synthesize(d1, d2, rho2);
        CAPTURE(d1);
        CAPTURE(d2);
        CAPTURE(gain);
        check_structure(res, d2, rho2);
      }
    }
  }
}

TEST_CASE("halving the energy budget never raises the pulse height") {
  for (double d1 : {0.3, 0.1, 0.01}) {
    for (const char* gain : {"id", "r2", "r3"}) {
      auto rho2 = KFunction::from_name(gain);
      double d2 = 1.0;
      double previous = synthesize(d1, d2, rho2).bar_mu;
      for (int i = 0; i < 8; ++i) {
        d2 *= 0.5;
        double current = synthesize(d1, d2, rho2).bar_mu;
        CHECK(current <= previous);
        previous = current;
      }
    }
  }
}

TEST_CASE("synthesize rejects out-of-contract budgets") {
  CHECK_THROWS_AS(synthesize(kEInv, 0.1, KFunction::identity()), std::invalid_argument);
  CHECK_THROWS_AS(synthesize(0.5, 0.1, KFunction::identity()), std::invalid_argument);
  CHECK_THROWS_AS(synthesize(0.0, 0.1, KFunction::identity()), std::invalid_argument);
  CHECK_THROWS_AS(synthesize(0.3, 0.0, KFunction::identity()), std::invalid_argument);
}

TEST_CASE("assembly picks the smallest fine-enough block") {
  auto res = synthesize(0.3, 0.2, KFunction::identity());
  auto ex = assemble(res, 0.3, 0.2, KFunction::identity(), KFunction::identity());
  CHECK(ex.block == 4);  // 2^-5 < delta and 2^4 > 3
  CHECK(ex.start_time == Rational(10));
  CHECK(ex.final_time == Rational(323, 32));
  CHECK(ex.initial_state == 0.3);
  double energy = energy_norm(ex.input, Interval::open_closed(ex.start_time, ex.final_time),
                              ImpulseTimeSequence::dyadic_bursts(), KFunction::identity(),
                              KFunction::identity());
  CHECK(energy == doctest::Approx(0.2).epsilon(1e-14));
  CHECK_THROWS_AS(assemble(res, 0.3, 0.2, KFunction::identity(), KFunction::identity(), 3),
                  std::invalid_argument);
}

TEST_CASE("witness run dominates its synthesized lower bounds") {
  for (int block_override : {0, 6}) {
    auto run = run_witness(0.3, 0.2, KFunction::identity(), KFunction::identity(),
                           block_override);
    CHECK(run.checks.pass());
    CHECK_FALSE(run.trivial);
    CHECK(run.x_final >= kEInv - 1e-12);
    const auto system = model::make_system_a(ImpulseTimeSequence::dyadic_bursts());
    auto traj = sim::simulate(system, run.experiment.start_time, run.experiment.initial_state,
                              run.experiment.input, run.experiment.final_time);
    REQUIRE(static_cast<int>(traj.jumps().size()) == run.synthesis.steps());
    for (std::size_t k = 0; k < traj.jumps().size(); ++k) {
      CHECK(traj.jumps()[k].x_plus >= run.synthesis.xi[k + 1] - 1e-12);
    }
  }
  auto trivial = run_witness(1.0, 0.01, KFunction::identity(), KFunction::identity());
  CHECK(trivial.trivial);
  CHECK(trivial.checks.pass());
  CHECK(trivial.x_final == 1.0);
}

TEST_CASE("falsification picks the largest feasible offset") {
  auto id = KFunction::identity();
  // alpha = id, beta0 = id: 2*delta < e^-1 caps delta at e^-1/2
  auto symmetric = falsify_iiss_candidate(id, id, id, id);
  CHECK(symmetric.report.pass());
  CHECK(symmetric.delta == doctest::Approx(kEInv / 2).epsilon(1e-9));
  CHECK(symmetric.candidate_bound < symmetric.alpha_at_threshold);

  // alpha = r^2, beta0 = 2r: 3*delta < e^-2 caps delta at e^-2/3
  auto skewed = falsify_iiss_candidate(KFunction::power(2), KFunction::scaled_power(2, 1), id, id);
  CHECK(skewed.report.pass());
  CHECK(skewed.delta == doctest::Approx(std::exp(-2.0) / 3).epsilon(1e-9));

  // degenerate zero bound: any offset below e^-1 is feasible
  auto degenerate = falsify_iiss_candidate(id, KFunction::zero(), id, id);
  CHECK(degenerate.report.pass());
  CHECK(degenerate.delta == doctest::Approx(kEInv).epsilon(1e-9));
  CHECK(degenerate.delta < kEInv);

  // a hopeless candidate admits no desk-scale offset
  CHECK_THROWS_AS(falsify_iiss_candidate(id, KFunction::scaled_power(1e7, 1), id, id),
                  std::runtime_error);
}
