// sim.cpp
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#include "impkit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "impkit/interval.hpp"

namespace impkit::sim {

namespace {

void format_double(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void csv_row(std::ostream& out, const std::string& t, double x, const char* kind) {
  out << t << ',';
  format_double(out, x);
  out << ',' << kind << '\n';
}

}  // namespace

double Trajectory::Segment::eval(double t_offset) const {
  double decay = std::exp(-t_offset);
  double x = x_start * decay;
  if (forced) x += u_const * (-std::expm1(-t_offset));
  return x;
}

double Trajectory::Segment::eval_at(const Rational& t) const {
  if (dense.empty()) return eval((t - start).to_double());
  double td = t.to_double();
  if (td >= dense.back().first) return dense.back().second;
  auto it = std::upper_bound(dense.begin(), dense.end(), td,
                             [](double v, const auto& p) { return v < p.first; });
  if (it == dense.begin()) return dense.front().second;
  const auto& [t2, x2] = *it;
  const auto& [t1, x1] = *std::prev(it);
  if (t2 == t1) return x2;
  double w = (td - t1) / (t2 - t1);
  return x1 + w * (x2 - x1);
}

double Trajectory::sample(const Rational& t) const {
  if (t < start_ || t > end_) {
    throw std::out_of_range("sample time " + t.to_string() + " outside trajectory domain");
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](const Rational& v, const Segment& s) { return v < s.start; });
  const Segment& seg = *std::prev(it);  // segments start at start_, so it > begin
  return seg.eval_at(t);
}

double Trajectory::left_limit(const Rational& tau) const {
  auto it = std::lower_bound(jumps_.begin(), jumps_.end(), tau,
                             [](const JumpRecord& j, const Rational& v) { return j.time < v; });
  if (it == jumps_.end() || it->time != tau) {
    throw std::invalid_argument("left_limit: " + tau.to_string() + " is not a jump time");
  }
  return it->x_minus;
}

double Trajectory::max_abs_at_events() const {
  double best = std::fabs(x0_);
  for (const auto& seg : segments_) {
    best = std::max(best, std::fabs(seg.x_start));
    best = std::max(best, std::fabs(seg.eval_at(seg.end)));
  }
  for (const auto& j : jumps_) best = std::max(best, std::fabs(j.x_plus));
  return best;
}

double Trajectory::min_abs_at_events() const {
  double best = std::fabs(x0_);
  for (const auto& seg : segments_) {
    best = std::min(best, std::fabs(seg.x_start));
    best = std::min(best, std::fabs(seg.eval_at(seg.end)));
  }
  for (const auto& j : jumps_) best = std::min(best, std::fabs(j.x_plus));
  return best;
}

void Trajectory::write_csv(std::ostream& out, int samples_per_segment) const {
  out << "t,x,kind\n";
  csv_row(out, start_.to_decimal_string(), x0_, "flow");
  std::size_t jump_index = 0;
  for (const auto& seg : segments_) {
    if (seg.start == seg.end) continue;
    for (int i = 1; i < samples_per_segment; ++i) {
      Rational t = seg.start + (seg.end - seg.start) * Rational(i, samples_per_segment);
      csv_row(out, t.to_decimal_string(), seg.eval_at(t), "flow");
    }
    double x_end = seg.eval_at(seg.end);
    if (jump_index < jumps_.size() && jumps_[jump_index].time == seg.end) {
      const auto& j = jumps_[jump_index++];
      csv_row(out, j.time.to_decimal_string(), j.x_minus, "pre_jump");
      csv_row(out, j.time.to_decimal_string(), j.x_plus, "post_jump");
    } else {
      csv_row(out, seg.end.to_decimal_string(), x_end, "flow");
    }
  }
}

namespace {

// One classical fixed-step pass over [t_a, t_a + span] with the input held
// constant; fills (t, x) pairs per step boundary.
double rk4_span(const model::ImpulsiveSystem& system, double t_a, double span, double x,
                double u_held, double max_step, std::vector<std::pair<double, double>>& dense) {
  long long steps = std::max<long long>(1, static_cast<long long>(std::ceil(span / max_step - 1e-12)));
  double h = span / static_cast<double>(steps);
  dense.emplace_back(t_a, x);
  for (long long s = 0; s < steps; ++s) {
    double t = t_a + h * static_cast<double>(s);
    double k1 = system.flow_rhs(t, x, u_held);
    double k2 = system.flow_rhs(t + 0.5 * h, x + 0.5 * h * k1, u_held);
    double k3 = system.flow_rhs(t + 0.5 * h, x + 0.5 * h * k2, u_held);
    double k4 = system.flow_rhs(t + h, x + h * k3, u_held);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    dense.emplace_back(s + 1 == steps ? t_a + span : t + h, x);
  }
  return x;
}

}  // namespace

Trajectory simulate(const model::ImpulsiveSystem& system, const Rational& t0, double x0,
                    const InputSignal& input, const Rational& t_end, Engine engine,
                    double max_step) {
  if (t_end < t0) throw std::invalid_argument("simulate: t_end before t0");
  if (!std::isfinite(x0)) throw std::invalid_argument("simulate: x0 must be finite");
  if (engine == Engine::Exact && !system.affine_flow()) {
    throw std::invalid_argument("simulate: exact engine requires an affine flow");
  }
  if (engine == Engine::Rk4 && !(max_step > 0)) {
    throw std::invalid_argument("simulate: rk4 needs a positive step bound");
  }
  if (input.known_until() && t_end > *input.known_until()) {
    throw std::runtime_error("simulate: horizon exceeds the input's declared validity " +
                             input.known_until()->to_string());
  }

  Trajectory traj;
  traj.start_ = t0;
  traj.end_ = t_end;
  traj.x0_ = x0;

  const std::vector<Rational> jump_times = system.gamma.times_in(Interval::open_closed(t0, t_end));
  std::vector<Rational> bounds;
  bounds.reserve(jump_times.size() + input.pieces().size() * 2 + 2);
  bounds.push_back(t0);
  for (const auto& piece : input.pieces()) {
    if (t0 < piece.start && piece.start < t_end) bounds.push_back(piece.start);
    if (t0 < piece.end && piece.end < t_end) bounds.push_back(piece.end);
  }
  bounds.insert(bounds.end(), jump_times.begin(), jump_times.end());
  bounds.push_back(t_end);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  const bool forced = system.flow == model::Flow::ForcedDecay;
  double x = x0;
  std::size_t next_jump = 0;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const Rational& a = bounds[i];
    const Rational& b = bounds[i + 1];
    Trajectory::Segment seg;
    seg.start = a;
    seg.end = b;
    seg.x_start = x;
    seg.u_const = input.base_value(a);
    seg.forced = forced;
    double x_end;
    if (engine == Engine::Exact) {
      x_end = seg.eval_at(b);
    } else {
      x_end = rk4_span(system, a.to_double(), (b - a).to_double(), x, seg.u_const, max_step,
                       seg.dense);
    }
    if (!std::isfinite(x_end)) {
      throw std::runtime_error("simulate: non-finite state while flowing into t = " +
                               b.to_string());
    }
    traj.segments_.push_back(std::move(seg));
    if (next_jump < jump_times.size() && jump_times[next_jump] == b) {
      double u_at = input.value(b);
      double x_plus = system.jump(b, x_end, u_at);
      if (!std::isfinite(x_plus)) {
        throw std::runtime_error("simulate: non-finite state at jump t = " + b.to_string());
      }
      traj.jumps_.push_back(JumpRecord{b, x_end, u_at, x_plus});
      ++next_jump;
      x = x_plus;
      if (b == t_end) {
        // zero-length tail so sampling at the endpoint sees the post value
        traj.segments_.push_back(Trajectory::Segment{b, b, x, 0.0, false, {}});
      }
    } else {
      x = x_end;
    }
  }
  if (traj.segments_.empty()) {
    traj.segments_.push_back(Trajectory::Segment{t0, t0, x0, 0.0, false, {}});
  }
  return traj;
}

}  // namespace impkit::sim
