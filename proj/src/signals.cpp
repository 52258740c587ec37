// signals.cpp
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#include "impkit/signals.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace impkit {

namespace {

// Norm queries on a truncated signal must stay inside its declared horizon;
// beyond it the stored zeros say nothing about the real signal.
void guard_horizon(const InputSignal& u, const Interval& within) {
  if (!u.known_until()) return;
  const Rational& limit = *u.known_until();
  if (within.lo > limit || (!within.hi_unbounded && within.hi > limit)) {
    throw std::runtime_error("norm undefined at desk scale: query beyond the signal horizon " +
                             limit.to_string());
  }
}

// Length of the overlap of [piece.start, piece.end) with the interval.
// Endpoint openness never changes the measure.
Rational overlap_length(const ConstantPiece& piece, const Interval& within) {
  Rational lo = std::max(piece.start, within.lo);
  Rational hi = within.hi_unbounded ? piece.end : std::min(piece.end, within.hi);
  return hi > lo ? hi - lo : Rational(0);
}

// Sequence times to inspect: for unbounded intervals only the part up to the
// signal's support matters (the signal vanishes beyond it).
std::vector<Rational> gamma_times_for(const InputSignal& u, const Interval& within,
                                      const ImpulseTimeSequence& gamma) {
  if (!within.hi_unbounded) return gamma.times_in(within);
  Rational cap = std::max(within.lo, u.support_end());
  Interval clipped{within.lo, cap, within.lo_closed, true, false};
  return gamma.times_in(clipped);
}

}  // namespace

const InputSignal& InputSignal::zero() {
  static const InputSignal instance;
  return instance;
}

void InputSignal::add_piece(Rational start, Rational end, double value) {
  if (!(start < end)) throw std::invalid_argument("signal piece needs start < end");
  ConstantPiece piece{start, end, value};
  auto pos = std::lower_bound(pieces_.begin(), pieces_.end(), piece,
                              [](const ConstantPiece& a, const ConstantPiece& b) {
                                return a.start < b.start;
                              });
  if (pos != pieces_.end() && pos->start < piece.end) {
    throw std::invalid_argument("signal pieces overlap");
  }
  if (pos != pieces_.begin() && piece.start < std::prev(pos)->end) {
    throw std::invalid_argument("signal pieces overlap");
  }
  pieces_.insert(pos, piece);
}

void InputSignal::add_atom(Rational t, double value) { atoms_[t] = value; }

double InputSignal::value(const Rational& t) const {
  auto it = atoms_.find(t);
  if (it != atoms_.end()) return it->second;
  return base_value(t);
}

double InputSignal::base_value(const Rational& t) const {
  auto pos = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                              [](const Rational& value, const ConstantPiece& piece) {
                                return value < piece.start;
                              });
  if (pos == pieces_.begin()) return 0.0;
  const ConstantPiece& piece = *std::prev(pos);
  return t < piece.end ? piece.value : 0.0;
}

Rational InputSignal::support_end() const {
  Rational end(0);
  if (!pieces_.empty()) end = std::max(end, pieces_.back().end);
  if (!atoms_.empty()) end = std::max(end, atoms_.rbegin()->first);
  return end;
}

void InputSignal::save(std::ostream& out) const {
  for (const auto& piece : pieces_) {
    out << "piece " << piece.start << ' ' << piece.end << ' ';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", piece.value);
    out << buf << '\n';
  }
  for (const auto& [t, v] : atoms_) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << "atom " << t << ' ' << buf << '\n';
  }
  if (known_until_) out << "horizon " << *known_until_ << '\n';
}

InputSignal InputSignal::load(std::istream& in) {
  InputSignal u;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;
    if (kind == "piece") {
      std::string a, b, v;
      if (!(ss >> a >> b >> v)) throw std::invalid_argument("signal file: piece a b v");
      u.add_piece(Rational::parse(a), Rational::parse(b), std::stod(v));
    } else if (kind == "atom") {
      std::string t, v;
      if (!(ss >> t >> v)) throw std::invalid_argument("signal file: atom t v");
      u.add_atom(Rational::parse(t), std::stod(v));
    } else if (kind == "horizon") {
      std::string t;
      if (!(ss >> t)) throw std::invalid_argument("signal file: horizon t");
      u.set_known_until(Rational::parse(t));
    } else {
      throw std::invalid_argument("signal file: unknown directive '" + kind + "'");
    }
  }
  return u;
}

InputSignal InputSignal::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open signal file: " + path);
  return load(in);
}

KFunction KFunction::identity() { return KFunction(Form::Identity, "id"); }

KFunction KFunction::power(double p) {
  if (!(p > 0)) throw std::invalid_argument("power form needs p > 0");
  KFunction k(Form::Power, p == 2 ? "r2" : p == 3 ? "r3" : "pow:" + std::to_string(p));
  k.exponent_ = p;
  return k;
}

KFunction KFunction::scaled_power(double c, double p) {
  if (!(c > 0) || !(p > 0)) throw std::invalid_argument("scaled power needs c, p > 0");
  KFunction k(Form::ScaledPower,
              "scale:" + std::to_string(c) + ":" + std::to_string(p));
  k.coeff_ = c;
  k.exponent_ = p;
  return k;
}

KFunction KFunction::table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw std::invalid_argument("table form needs at least two points");
  if (points.front().first != 0.0 || points.front().second != 0.0) {
    throw std::invalid_argument("table form must start at (0, 0)");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1].first < points[i].first) ||
        !(points[i - 1].second < points[i].second)) {
      throw std::invalid_argument("table form must be strictly increasing");
    }
  }
  KFunction k(Form::Table, "table[" + std::to_string(points.size()) + "]");
  k.points_ = std::move(points);
  return k;
}

KFunction KFunction::zero() { return KFunction(Form::Zero, "zero"); }

KFunction KFunction::from_name(std::string_view name) {
  if (name == "id" || name == "identity") return identity();
  if (name == "r2" || name == "sq") return power(2);
  if (name == "r3" || name == "cube") return power(3);
  if (name == "zero") return zero();
  if (name.rfind("pow:", 0) == 0) return power(std::stod(std::string(name.substr(4))));
  if (name.rfind("scale:", 0) == 0) {
    std::string rest(name.substr(6));
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("scale:<c>:<p>");
    return scaled_power(std::stod(rest.substr(0, colon)), std::stod(rest.substr(colon + 1)));
  }
  throw std::invalid_argument("unknown comparison function: '" + std::string(name) + "'");
}

double KFunction::operator()(double r) const {
  if (r < 0) throw std::domain_error("comparison functions take nonnegative arguments");
  switch (form_) {
    case Form::Identity:
      return r;
    case Form::Power:
      if (exponent_ == 1.0) return r;
      if (exponent_ == 2.0) return r * r;
      if (exponent_ == 3.0) return r * r * r;
      return std::pow(r, exponent_);
    case Form::ScaledPower:
      return coeff_ * std::pow(r, exponent_);
    case Form::Table: {
      if (r >= points_.back().first) {
        const auto& [x1, y1] = points_[points_.size() - 2];
        const auto& [x2, y2] = points_.back();
        return y2 + (r - x2) * (y2 - y1) / (x2 - x1);
      }
      auto it = std::upper_bound(points_.begin(), points_.end(), r,
                                 [](double v, const auto& p) { return v < p.first; });
      const auto& [x2, y2] = *it;
      const auto& [x1, y1] = *std::prev(it);
      return y1 + (r - x1) * (y2 - y1) / (x2 - x1);
    }
    case Form::Zero:
      return 0.0;
  }
  throw std::logic_error("unreachable");
}

double KFunction::inverse(double y) const {
  if (y < 0) throw std::domain_error("inverse takes nonnegative arguments");
  switch (form_) {
    case Form::Identity:
      return y;
    case Form::Power:
      if (exponent_ == 1.0) return y;
      if (exponent_ == 2.0) return std::sqrt(y);
      if (exponent_ == 3.0) return std::cbrt(y);
      return std::pow(y, 1.0 / exponent_);
    case Form::ScaledPower:
      return std::pow(y / coeff_, 1.0 / exponent_);
    case Form::Table: {
      if (y == 0.0) return 0.0;
      // bracket-doubling, then bisection to |rho(r) - y| <= 1e-12 max(1, y)
      double hi = 1.0;
      int guard = 0;
      while ((*this)(hi) < y) {
        hi *= 2.0;
        if (++guard > 1024) throw std::runtime_error("inverse bracket not found");
      }
      double lo = 0.0;
      double tol = 1e-12 * std::max(1.0, y);
      for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double val = (*this)(mid);
        if (std::fabs(val - y) <= tol) return mid;
        (val < y ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    case Form::Zero:
      throw std::domain_error("the zero candidate has no inverse");
  }
  throw std::logic_error("unreachable");
}

double sup_norm(const InputSignal& u, const Interval& within, const ImpulseTimeSequence& gamma) {
  if (within.empty()) return 0.0;
  guard_horizon(u, within);
  double ess = 0.0;  // base is 0 outside the pieces
  for (const auto& piece : u.pieces()) {
    if (overlap_length(piece, within) > Rational(0)) {
      ess = std::max(ess, std::fabs(piece.value));
    }
  }
  double at_impulses = 0.0;
  for (const auto& tau : gamma_times_for(u, within, gamma)) {
    at_impulses = std::max(at_impulses, std::fabs(u.value(tau)));
  }
  return std::max(ess, at_impulses);
}

double energy_norm(const InputSignal& u, const Interval& within, const ImpulseTimeSequence& gamma,
                   const KFunction& rho1, const KFunction& rho2) {
  if (within.empty()) return 0.0;
  guard_horizon(u, within);
  double total = base_integral(u, within, rho1);
  for (const auto& tau : gamma_times_for(u, within, gamma)) {
    total += rho2(std::fabs(u.value(tau)));
  }
  return total;
}

double base_integral(const InputSignal& u, const Interval& within, const KFunction& rho) {
  double total = 0.0;
  for (const auto& piece : u.pieces()) {
    Rational len = overlap_length(piece, within);
    if (len > Rational(0)) total += rho(std::fabs(piece.value)) * len.to_double();
  }
  return total;
}

}  // namespace impkit
