// rational.cpp
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#include "impkit/rational.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace impkit {

namespace {

using Wide = __int128;

long long checked_narrow(Wide v) {
  if (v > Wide(0x7fffffffffffffffLL) || v < -Wide(0x7fffffffffffffffLL)) {
    throw std::overflow_error("rational overflow (time arithmetic exceeded 64 bits)");
  }
  return static_cast<long long>(v);
}

long long parse_int(std::string_view text) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad integer in rational: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Rational Rational::reduced(__int128 num, __int128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  Rational r;
  r.num_ = checked_narrow(num);
  r.den_ = checked_narrow(den);
  return r;
}

Rational::Rational(long long num, long long den) { *this = reduced(num, den); }

Rational Rational::dyadic(long long ticks, int log2_den) {
  if (log2_den < 0 || log2_den > 62) throw std::invalid_argument("dyadic exponent out of range");
  return Rational(ticks, 1LL << log2_den);
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = false;
    if (!head.empty() && (head.front() == '-' || head.front() == '+')) {
      negative = head.front() == '-';
      head.remove_prefix(1);
    }
    if (frac.empty() || frac.size() > 17) {
      throw std::invalid_argument("decimal literal out of range: '" + std::string(text) + "'");
    }
    long long whole = head.empty() ? 0 : parse_int(head);
    long long digits = parse_int(frac);
    if (whole < 0 || digits < 0) {
      throw std::invalid_argument("bad decimal literal: '" + std::string(text) + "'");
    }
    long long den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Wide num = Wide(whole) * den + digits;
    if (negative) num = -num;
    return reduced(num, den);
  }
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  return Rational(parse_int(body));
}

long long Rational::floor() const {
  long long q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

long long Rational::ceil() const {
  long long q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_decimal_string() const {
  if (den_ == 1) return std::to_string(num_);
  long long rest = den_;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  int places = twos > fives ? twos : fives;
  if (rest != 1 || places > 30) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", to_double());
    return buf;
  }
  Wide scale = 1;
  for (int i = 0; i < places - twos; ++i) scale *= 2;
  for (int i = 0; i < places - fives; ++i) scale *= 5;
  Wide scaled = Wide(num_) * scale;  // num / den == scaled / 10^places
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  Wide pow10 = 1;
  for (int i = 0; i < places; ++i) pow10 *= 10;
  Wide whole = scaled / pow10;
  Wide frac = scaled % pow10;
  std::string digits;
  for (int i = 0; i < places; ++i) {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(frac % 10)));
    frac /= 10;
  }
  while (!digits.empty() && digits.back() == '0') digits.pop_back();
  std::string head;
  if (whole == 0) {
    head = "0";
  } else {
    while (whole > 0) {
      head.insert(head.begin(), static_cast<char>('0' + static_cast<int>(whole % 10)));
      whole /= 10;
    }
  }
  std::string out = negative ? "-" : "";
  out += head;
  if (!digits.empty()) {
    out += '.';
    out += digits;
  }
  return out;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::reduced(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::reduced(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::reduced(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::invalid_argument("rational division by zero");
  return Rational::reduced(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = Wide(a.num_) * b.den_;
  Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace impkit
