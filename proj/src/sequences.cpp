// sequences.cpp
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#include "impkit/sequences.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace impkit {

namespace {

// Burst blocks beyond this index need dyadic ticks past 2^62 and carry no
// desk-scale meaning.
constexpr long long kMaxBurstBlock = 55;

long long burst_block_at_or_before(const Rational& t) {
  long long n = 1;
  while (n + 1 <= kMaxBurstBlock && Rational(ramp_start(n + 1)) <= t) ++n;
  if (n == kMaxBurstBlock && Rational(ramp_start(n + 1)) <= t) {
    throw std::overflow_error("dyadic burst sequence queried beyond block 55");
  }
  return n;
}

}  // namespace

long long ramp_start(long long j) { return j * (j + 1) / 2; }

ImpulseTimeSequence ImpulseTimeSequence::explicit_times(std::vector<Rational> times) {
  if (times.empty()) throw std::invalid_argument("explicit sequence needs at least one time");
  if (times.front() <= Rational(0)) {
    throw std::invalid_argument("impulse times must be strictly positive");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i - 1] < times[i])) {
      throw std::invalid_argument("impulse times must strictly increase");
    }
  }
  ImpulseTimeSequence seq;
  seq.kind_ = Kind::Explicit;
  seq.tail_gap_ = times.size() >= 2 ? times.back() - times[times.size() - 2] : Rational(1);
  seq.times_ = std::move(times);
  seq.label_ = "explicit[" + std::to_string(seq.times_.size()) + "]";
  return seq;
}

ImpulseTimeSequence ImpulseTimeSequence::concatenation(
    const std::vector<std::vector<Rational>>& blocks) {
  std::vector<Rational> all;
  for (const auto& block : blocks) all.insert(all.end(), block.begin(), block.end());
  return explicit_times(std::move(all));
}

ImpulseTimeSequence ImpulseTimeSequence::periodic(Rational first, Rational dwell) {
  if (first <= Rational(0)) throw std::invalid_argument("periodic sequence needs first > 0");
  if (dwell <= Rational(0)) throw std::invalid_argument("periodic sequence needs dwell > 0");
  ImpulseTimeSequence seq;
  seq.kind_ = Kind::Periodic;
  seq.first_ = first;
  seq.dwell_ = dwell;
  seq.label_ = "periodic(" + first.to_string() + "," + dwell.to_string() + ")";
  return seq;
}

ImpulseTimeSequence ImpulseTimeSequence::dyadic_bursts() {
  ImpulseTimeSequence seq;
  seq.kind_ = Kind::DyadicBursts;
  seq.label_ = "gammastar";
  return seq;
}

ImpulseTimeSequence ImpulseTimeSequence::load(std::istream& in) {
  std::vector<Rational> times;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string token;
    if (!(ss >> token)) continue;
    times.push_back(Rational::parse(token));
    std::string extra;
    if (ss >> extra) throw std::invalid_argument("sequence file: one time per line");
  }
  return explicit_times(std::move(times));
}

ImpulseTimeSequence ImpulseTimeSequence::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sequence file: " + path);
  return load(in);
}

Rational ImpulseTimeSequence::next_after(const Rational& t) const {
  switch (kind_) {
    case Kind::Explicit: {
      if (t < times_.front()) return times_.front();
      if (t < times_.back()) {
        auto it = std::upper_bound(times_.begin(), times_.end(), t);
        return *it;
      }
      // continue past the listed prefix with the tail gap
      Rational offset = t - times_.back();
      long long steps = (offset / tail_gap_).floor() + 1;
      return times_.back() + Rational(steps) * tail_gap_;
    }
    case Kind::Periodic: {
      if (t < first_) return first_;
      long long steps = ((t - first_) / dwell_).floor() + 1;
      return first_ + Rational(steps) * dwell_;
    }
    case Kind::DyadicBursts: {
      if (t < Rational(1)) return Rational(1);
      long long n = burst_block_at_or_before(t);
      Rational start(ramp_start(n));
      Rational end = start + Rational(1, 2);
      if (t >= end) return Rational(ramp_start(n + 1));
      // next tick within the block: spacing 2^-(n+1)
      Rational scaled = (t - start) * Rational(1LL << (n + 1));
      long long k = scaled.floor() + 1;
      return start + Rational::dyadic(k, static_cast<int>(n + 1));
    }
  }
  throw std::logic_error("unreachable");
}

bool ImpulseTimeSequence::contains(const Rational& t) const {
  switch (kind_) {
    case Kind::Explicit: {
      if (std::binary_search(times_.begin(), times_.end(), t)) return true;
      if (t <= times_.back()) return false;
      return ((t - times_.back()) / tail_gap_).is_integer();
    }
    case Kind::Periodic: {
      if (t < first_) return false;
      return ((t - first_) / dwell_).is_integer();
    }
    case Kind::DyadicBursts: {
      if (t < Rational(1)) return false;
      long long n = burst_block_at_or_before(t);
      Rational offset = t - Rational(ramp_start(n));
      if (offset > Rational(1, 2)) return false;
      return (offset * Rational(1LL << (n + 1))).is_integer();
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<Rational> ImpulseTimeSequence::times_in(const Interval& within) const {
  if (within.hi_unbounded) {
    throw std::invalid_argument("times_in needs a bounded interval");
  }
  std::vector<Rational> out;
  if (within.empty()) return out;
  Rational t =
      (within.lo_closed && contains(within.lo)) ? within.lo : next_after(within.lo);
  while (t < within.hi || (within.hi_closed && t == within.hi)) {
    out.push_back(t);
    t = next_after(t);
  }
  return out;
}

}  // namespace impkit
