// rational.hpp - exact rational time arithmetic for event scheduling
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace impkit {

/// Exact rational number used for every time quantity: impulse instants,
/// interval endpoints, signal breakpoints. Membership tests and event
/// scheduling compare rationals, never doubles, so burst-block boundaries
/// classify exactly. Stored normalized (den > 0, gcd(num, den) = 1);
/// arithmetic goes through 128-bit intermediates and throws on 64-bit
/// overflow, which desk-scale horizons never reach.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(long long value) : num_(value) {}  // NOLINT: implicit by design
  Rational(long long num, long long den);

  /// ticks / 2^log2_den
  static Rational dyadic(long long ticks, int log2_den);
  /// Accepts "p/q", plain integers, and terminating decimals ("10.09375").
  static Rational parse(std::string_view text);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  long long floor() const;
  long long ceil() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p/q" (or plain integer).
  std::string to_string() const;
  /// Exact decimal when the denominator is 2^a*5^b (every dyadic time),
  /// 17-significant-digit decimal otherwise.
  std::string to_decimal_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  static Rational reduced(__int128 num, __int128 den);

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace impkit
