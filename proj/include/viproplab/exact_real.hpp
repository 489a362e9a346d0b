// Copyright 2026 The viproplab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VIPROPLAB_EXACT_REAL_HPP_
#define VIPROPLAB_EXACT_REAL_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

namespace viproplab {

// Arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational parseRational(std::string_view text);

// Canonical "p/q" text (or "p" when q == 1), sign on the numerator.
std::string formatRational(const Rational& q);

// ["num","den"] with exact integer strings.
nlohmann::json rationalToJson(const Rational& q);
Rational rationalFromJson(const nlohmann::json& j);

double toDouble(const Rational& q);

// A real number that is either an exact rational or an approximate double.
// Exact op exact stays exact; anything touching an approximate value is
// approximate.
class ExactReal {
 public:
  ExactReal() : value_(Rational(0)) {}
  ExactReal(Rational q) : value_(std::move(q)) {}  // NOLINT(implicit)
  ExactReal(long n) : value_(Rational(n)) {}       // NOLINT(implicit)
  ExactReal(int n) : value_(Rational(n)) {}        // NOLINT(implicit)

  static ExactReal approximate(double x) { return ExactReal(Approx{x}); }

  bool isExact() const { return std::holds_alternative<Rational>(value_); }

  // Throws std::logic_error if approximate.
  const Rational& exact() const;
  double toDouble() const;

  ExactReal abs() const;
  int sign() const;

  friend ExactReal operator+(const ExactReal& a, const ExactReal& b);
  friend ExactReal operator-(const ExactReal& a, const ExactReal& b);
  friend ExactReal operator*(const ExactReal& a, const ExactReal& b);
  // Throws std::domain_error on division by an exact zero.
  friend ExactReal operator/(const ExactReal& a, const ExactReal& b);
  friend ExactReal operator-(const ExactReal& a);

  ExactReal& operator+=(const ExactReal& b) { return *this = *this + b; }
  ExactReal& operator-=(const ExactReal& b) { return *this = *this - b; }
  ExactReal& operator*=(const ExactReal& b) { return *this = *this * b; }

  // Exact comparison when both sides are exact, double comparison otherwise.
  friend bool operator==(const ExactReal& a, const ExactReal& b);
  friend bool operator<(const ExactReal& a, const ExactReal& b);
  friend bool operator>(const ExactReal& a, const ExactReal& b) { return b < a; }
  friend bool operator<=(const ExactReal& a, const ExactReal& b) { return !(b < a); }
  friend bool operator>=(const ExactReal& a, const ExactReal& b) { return !(a < b); }

  std::string toString() const;

 private:
  struct Approx {
    double value;
  };
  explicit ExactReal(Approx a) : value_(a.value) {}

  std::variant<Rational, double> value_;
};

ExactReal pow(const ExactReal& x, unsigned p);

// Real p-th root of a nonnegative value; always approximate.
ExactReal root(const ExactReal& x, unsigned p);

// Exact values serialize as ["num","den"]; approximate values as
// {"approx": true, "value": x}.
nlohmann::json toJson(const ExactReal& x);
ExactReal exactRealFromJson(const nlohmann::json& j);

}  // namespace viproplab

#endif  // VIPROPLAB_EXACT_REAL_HPP_
