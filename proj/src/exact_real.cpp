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

#include "viproplab/exact_real.hpp"

#include <cmath>
#include <stdexcept>

namespace viproplab {

namespace {

bool isIntegerText(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational parseRational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!isIntegerText(num) || !isIntegerText(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string formatRational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

nlohmann::json rationalToJson(const Rational& q) {
  return nlohmann::json::array({q.get_num().get_str(), q.get_den().get_str()});
}

Rational rationalFromJson(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw std::invalid_argument("rational must be [\"num\",\"den\"]: " + j.dump());
  }
  const std::string den = j[1].get<std::string>();
  if (!den.empty() && den[0] == '-') {
    throw std::invalid_argument("rational denominator must be positive: " + j.dump());
  }
  return parseRational(j[0].get<std::string>() + "/" + den);
}

double toDouble(const Rational& q) { return q.get_d(); }

const Rational& ExactReal::exact() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw std::logic_error("ExactReal: value is approximate");
}

double ExactReal::toDouble() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return q->get_d();
  return std::get<double>(value_);
}

ExactReal ExactReal::abs() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return ExactReal(Rational(::abs(*q)));
  return approximate(std::fabs(std::get<double>(value_)));
}

int ExactReal::sign() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return sgn(*q);
  const double x = std::get<double>(value_);
  return (x > 0) - (x < 0);
}

ExactReal operator+(const ExactReal& a, const ExactReal& b) {
  if (a.isExact() && b.isExact()) return ExactReal(Rational(a.exact() + b.exact()));
  return ExactReal::approximate(a.toDouble() + b.toDouble());
}

ExactReal operator-(const ExactReal& a, const ExactReal& b) {
  if (a.isExact() && b.isExact()) return ExactReal(Rational(a.exact() - b.exact()));
  return ExactReal::approximate(a.toDouble() - b.toDouble());
}

ExactReal operator*(const ExactReal& a, const ExactReal& b) {
  if (a.isExact() && b.isExact()) return ExactReal(Rational(a.exact() * b.exact()));
  return ExactReal::approximate(a.toDouble() * b.toDouble());
}

ExactReal operator/(const ExactReal& a, const ExactReal& b) {
  if (a.isExact() && b.isExact()) {
    if (b.exact() == 0) throw std::domain_error("ExactReal: division by zero");
    return ExactReal(Rational(a.exact() / b.exact()));
  }
  return ExactReal::approximate(a.toDouble() / b.toDouble());
}

ExactReal operator-(const ExactReal& a) {
  if (a.isExact()) return ExactReal(Rational(-a.exact()));
  return ExactReal::approximate(-a.toDouble());
}

bool operator==(const ExactReal& a, const ExactReal& b) {
  if (a.isExact() && b.isExact()) return a.exact() == b.exact();
  return a.toDouble() == b.toDouble();
}

bool operator<(const ExactReal& a, const ExactReal& b) {
  if (a.isExact() && b.isExact()) return a.exact() < b.exact();
  return a.toDouble() < b.toDouble();
}

std::string ExactReal::toString() const {
  if (isExact()) return formatRational(exact());
  nlohmann::json j = toDouble();
  return "~" + j.dump();
}

ExactReal pow(const ExactReal& x, unsigned p) {
  if (x.isExact()) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), x.exact().get_num_mpz_t(), p);
    mpz_pow_ui(out.get_den_mpz_t(), x.exact().get_den_mpz_t(), p);
    return ExactReal(std::move(out));
  }
  return ExactReal::approximate(std::pow(x.toDouble(), static_cast<double>(p)));
}

ExactReal root(const ExactReal& x, unsigned p) {
  if (p == 0) throw std::invalid_argument("root: order must be positive");
  const double v = x.toDouble();
  if (v < 0) throw std::domain_error("root: negative argument");
  if (p == 1) return ExactReal::approximate(v);
  if (p == 3) return ExactReal::approximate(std::cbrt(v));
  return ExactReal::approximate(std::pow(v, 1.0 / p));
}

nlohmann::json toJson(const ExactReal& x) {
  if (x.isExact()) return rationalToJson(x.exact());
  return nlohmann::json{{"approx", true}, {"value", x.toDouble()}};
}

ExactReal exactRealFromJson(const nlohmann::json& j) {
  if (j.is_object()) {
    if (!j.value("approx", false) || !j.contains("value") || !j["value"].is_number()) {
      throw std::invalid_argument("approximate real must be {\"approx\":true,\"value\":x}");
    }
    return ExactReal::approximate(j["value"].get<double>());
  }
  return ExactReal(rationalFromJson(j));
}

}  // namespace viproplab
