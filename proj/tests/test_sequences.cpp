#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "impkit/sequences.hpp"

using impkit::ImpulseTimeSequence;
using impkit::Interval;
using impkit::ramp_start;
using impkit::Rational;

TEST_CASE("ramp starts are the triangular numbers") {
  long long sum = 0;
  for (long long j = 0; j <= 20; ++j) {
    CHECK(ramp_start(j) == sum);  // brute-force accumulation oracle
    sum += j + 1;
  }
  CHECK(ramp_start(4) == 10);
  CHECK(ramp_start(9) == 45);
}

TEST_CASE("periodic enumeration") {
  auto seq = ImpulseTimeSequence::periodic(Rational(1), Rational(1));
  CHECK(seq.next_after(Rational(5, 2)) == Rational(3));
  CHECK(seq.next_after(Rational(3)) == Rational(4));
  auto times = seq.times_in(Interval::open_closed(Rational(0), Rational(7, 2)));
  REQUIRE(times.size() == 3);
  CHECK(times[0] == Rational(1));
  CHECK(times[2] == Rational(3));
  CHECK(seq.contains(Rational(17)));
  CHECK_FALSE(seq.contains(Rational(5, 2)));
}

TEST_CASE("burst sequence enumeration matches the block layout") {
  auto seq = ImpulseTimeSequence::dyadic_bursts();
  CHECK(seq.next_after(Rational(0)) == Rational(1));
  CHECK(seq.next_after(Rational(3, 2)) == Rational(3));  // block 1 ends at 3/2

  // first three elements: 1, 1 + 1/4, 1 + 2/4
  auto opening = seq.times_in(Interval::closed(Rational(1), Rational(3, 2)));
  REQUIRE(opening.size() == 3);
  CHECK(opening[0] == Rational(1));
  CHECK(opening[1] == Rational(5, 4));
  CHECK(opening[2] == Rational(3, 2));

  // block 2: five elements from 3 to 3.5 spaced by 1/8
  auto block2 = seq.times_in(Interval::closed(Rational(3), Rational(7, 2)));
  REQUIRE(block2.size() == 5);
  CHECK(block2[0] == Rational(3));
  CHECK(block2[1] == Rational(25, 8));
  CHECK(block2[4] == Rational(7, 2));

  CHECK(seq.times_in(Interval::open(Rational(3, 2), Rational(3))).empty());
  CHECK(seq.count_in(Interval::closed(Rational(3), Rational(7, 2))) == 5);
}

TEST_CASE("every enumerated burst time is a dyadic tick of its block") {
  auto seq = ImpulseTimeSequence::dyadic_bursts();
  for (int n = 1; n <= 8; ++n) {
    Rational start(ramp_start(n));
    auto block = seq.times_in(Interval::closed(start, start + Rational(1, 2)));
    CHECK(block.size() == (1ULL << n) + 1);
    for (long long k = 0; k < static_cast<long long>(block.size()); ++k) {
      CHECK(block[k] == start + Rational::dyadic(k, n + 1));
      CHECK(seq.contains(block[k]));
    }
    // strictly inside two ticks there is no element
    CHECK_FALSE(seq.contains(start + Rational(1, 1LL << (n + 2))));
  }
}

TEST_CASE("sequences are unbounded with finitely many times below any horizon") {
  auto sequences = {ImpulseTimeSequence::dyadic_bursts(),
                    ImpulseTimeSequence::periodic(Rational(1, 10), Rational(1, 10)),
                    ImpulseTimeSequence::explicit_times({Rational(1), Rational(2), Rational(5, 2)})};
  for (const auto& seq : sequences) {
    for (const auto& horizon : {Rational(10), Rational(201, 2)}) {
      auto times = seq.times_in(Interval::open_closed(Rational(0), horizon));
      CHECK(!times.empty());
      for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i - 1] < times[i]);
      CHECK(times.front() > Rational(0));
      CHECK(seq.next_after(times.back()) > horizon);
    }
  }
}

TEST_CASE("explicit sequences load from text and extend with the final gap") {
  std::istringstream file("# comment\n1\n5/4\n1.75\n\n");
  auto seq = ImpulseTimeSequence::load(file);
  CHECK(seq.contains(Rational(5, 4)));
  CHECK(seq.next_after(Rational(5, 4)) == Rational(7, 4));
  // last gap is 1/2, so the listed prefix continues 2.25, 2.75, ...
  CHECK(seq.next_after(Rational(7, 4)) == Rational(9, 4));
  CHECK(seq.next_after(Rational(100)) == Rational(401, 4));
  CHECK(seq.contains(Rational(11, 4)));
  CHECK_FALSE(seq.contains(Rational(5, 2)));
}

TEST_CASE("invalid sequences are rejected") {
  CHECK_THROWS_AS(ImpulseTimeSequence::explicit_times({}), std::invalid_argument);
  CHECK_THROWS_AS(ImpulseTimeSequence::explicit_times({Rational(0)}), std::invalid_argument);
  CHECK_THROWS_AS(ImpulseTimeSequence::explicit_times({Rational(2), Rational(1)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ImpulseTimeSequence::periodic(Rational(1), Rational(0)), std::invalid_argument);
  auto seq = ImpulseTimeSequence::dyadic_bursts();
  CHECK_THROWS_AS(seq.times_in(Interval::at_least(Rational(0))), std::invalid_argument);
}

TEST_CASE("concatenation flattens finite blocks") {
  auto seq = ImpulseTimeSequence::concatenation(
      {{Rational(1), Rational(5, 4)}, {Rational(3), Rational(25, 8)}});
  auto times = seq.times_in(Interval::open_closed(Rational(0), Rational(25, 8)));
  REQUIRE(times.size() == 4);
  CHECK(times[3] == Rational(25, 8));
  // beyond the listed prefix the final gap (1/8) carries on
  CHECK(seq.next_after(Rational(25, 8)) == Rational(13, 4));
}
