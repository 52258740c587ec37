// signals.hpp - input signals, comparison functions, and the two input norms
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "impkit/interval.hpp"
#include "impkit/rational.hpp"
#include "impkit/sequences.hpp"

namespace impkit {

/// Constant value on the half-open interval [start, end).
struct ConstantPiece {
  Rational start;
  Rational end;
  double value = 0.0;
};

/// A measurable, locally bounded input: a piecewise-constant base (zero
/// outside the declared pieces) plus finitely many atoms - values pinned at
/// exact instants. Evaluation: u(t) = atoms[t] when t is an atom key, else
/// the base value. Atoms have measure zero: they are invisible to the
/// essential supremum and to the integral term of the energy norm, but they
/// are exactly what the jump map sees at impulse instants.
///
/// An optional horizon (known_until) marks truncated representations of
/// conceptually unbounded signals; norm queries past it throw instead of
/// silently reading zeros.
class InputSignal {
 public:
  InputSignal() = default;  // the identically zero input
  static const InputSignal& zero();

  void add_piece(Rational start, Rational end, double value);
  void add_atom(Rational t, double value);
  void set_known_until(Rational t) { known_until_ = t; }

  double value(const Rational& t) const;       // atom-aware
  double base_value(const Rational& t) const;  // base alone

  const std::vector<ConstantPiece>& pieces() const { return pieces_; }
  const std::map<Rational, double>& atoms() const { return atoms_; }
  const std::optional<Rational>& known_until() const { return known_until_; }

  /// Latest time with possibly nonzero data (piece end or atom), 0 if none.
  Rational support_end() const;

  /// Text format: `piece <start> <end> <value>`, `atom <t> <value>`,
  /// optional `horizon <t>`; '#' comments.
  void save(std::ostream& out) const;
  static InputSignal load(std::istream& in);
  static InputSignal load_file(const std::string& path);

 private:
  std::vector<ConstantPiece> pieces_;  // ascending, non-overlapping
  std::map<Rational, double> atoms_;
  std::optional<Rational> known_until_;
};

/// A named class-K-infinity comparison function: continuous, strictly
/// increasing, rho(0) = 0, unbounded. Closed forms for identity and powers;
/// user tables are piecewise linear, extended past the last point with the
/// final slope. The degenerate Zero form is accepted only as a candidate
/// decay bound to falsify; it is not class K.
class KFunction {
 public:
  enum class Form { Identity, Power, ScaledPower, Table, Zero };

  static KFunction identity();
  static KFunction power(double p);                   // r^p, p > 0
  static KFunction scaled_power(double c, double p);  // c*r^p
  static KFunction table(std::vector<std::pair<double, double>> points);
  static KFunction zero();
  /// "id", "r2", "r3", "pow:<p>", "scale:<c>:<p>", "zero".
  static KFunction from_name(std::string_view name);

  double operator()(double r) const;
  /// r with |rho(r) - y| <= 1e-12 * max(1, y); exact for identity/power
  /// forms, bracket-doubling plus bisection otherwise.
  double inverse(double y) const;

  Form form() const { return form_; }
  const std::string& name() const { return name_; }

 private:
  KFunction(Form form, std::string name) : form_(form), name_(std::move(name)) {}
  Form form_;
  std::string name_;
  double coeff_ = 1.0;
  double exponent_ = 1.0;
  std::vector<std::pair<double, double>> points_;
};

inline double k_inverse(const KFunction& rho, double y) { return rho.inverse(y); }

/// Sup norm: max of the essential supremum of |base| over the interval and
/// of |u(t)| over the sequence times inside it.
double sup_norm(const InputSignal& u, const Interval& within, const ImpulseTimeSequence& gamma);

/// Energy norm: integral of rho1(|u|) over the interval (atoms excluded)
/// plus the sum of rho2(|u(tau)|) over sequence times inside it.
double energy_norm(const InputSignal& u, const Interval& within, const ImpulseTimeSequence& gamma,
                   const KFunction& rho1, const KFunction& rho2);

/// Integral of rho(|base|) alone over the interval (the integral term of
/// energy_norm).
double base_integral(const InputSignal& u, const Interval& within, const KFunction& rho);

}  // namespace impkit
