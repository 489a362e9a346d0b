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

#include "viproplab/pwcalc.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace viproplab::pwcalc {

namespace {

void checkGrid(const std::vector<Rational>& breakpoints, const char* what) {
  if (breakpoints.size() < 2) {
    throw std::invalid_argument(std::string(what) + ": need at least two breakpoints");
  }
  if (breakpoints.front() != 0 || breakpoints.back() != 1) {
    throw std::invalid_argument(std::string(what) + ": breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw std::invalid_argument(std::string(what) + ": breakpoints must be strictly increasing");
    }
  }
}

// Index of the piece [b[i], b[i+1]] containing t (right piece at interior
// breakpoints, last piece at t == 1).
std::size_t locate(const std::vector<Rational>& b, const Rational& t) {
  if (t < 0 || t > 1) throw std::out_of_range("evaluation point outside [0,1]");
  auto it = std::upper_bound(b.begin(), b.end(), t);
  const auto idx = static_cast<std::size_t>(it - b.begin());
  return std::min(idx == 0 ? 0 : idx - 1, b.size() - 2);
}

Rational signedSquare(const Rational& c) { return c * abs(c); }

Rational powAbs(const Rational& x, unsigned p) { return pow(ExactReal(Rational(abs(x))), p).exact(); }

const Rational& requireExact(const ExactReal& x, const char* what) {
  if (!x.isExact()) throw std::invalid_argument(std::string(what) + ": coefficient must be exact");
  return x.exact();
}

}  // namespace

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  checkGrid(breakpoints_, "PiecewiseLinearFn");
  if (values_.size() != breakpoints_.size()) {
    throw std::invalid_argument("PiecewiseLinearFn: one value per breakpoint required");
  }
  if (values_.front() != 0 || values_.back() != 0) {
    throw std::invalid_argument("PiecewiseLinearFn: boundary values must be zero");
  }
}

PiecewiseLinearFn PiecewiseLinearFn::zero() { return {{Rational(0), Rational(1)}, {Rational(0), Rational(0)}}; }

Rational PiecewiseLinearFn::operator()(const Rational& t) const {
  const std::size_t i = locate(breakpoints_, t);
  const Rational& a = breakpoints_[i];
  const Rational& b = breakpoints_[i + 1];
  return values_[i] + (values_[i + 1] - values_[i]) * (t - a) / (b - a);
}

PiecewiseConstFn::PiecewiseConstFn(std::vector<Rational> breakpoints,
                                   std::vector<Rational> intervalValues)
    : breakpoints_(std::move(breakpoints)), intervalValues_(std::move(intervalValues)) {
  checkGrid(breakpoints_, "PiecewiseConstFn");
  if (intervalValues_.size() + 1 != breakpoints_.size()) {
    throw std::invalid_argument("PiecewiseConstFn: one value per interval required");
  }
}

PiecewiseConstFn PiecewiseConstFn::constant(Rational c) {
  return {{Rational(0), Rational(1)}, {std::move(c)}};
}

const Rational& PiecewiseConstFn::operator()(const Rational& t) const {
  return intervalValues_[locate(breakpoints_, t)];
}

TestFunction TestFunction::polynomial(std::vector<Rational> coefficients) {
  while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
  if (coefficients.size() > kMaxDegree + 1) {
    throw std::invalid_argument("TestFunction: polynomial degree exceeds " +
                                std::to_string(kMaxDegree));
  }
  TestFunction phi;
  phi.kind_ = Kind::kPolynomial;
  phi.coefficients_ = std::move(coefficients);
  return phi;
}

TestFunction TestFunction::monomial(int degree) {
  if (degree < 0) throw std::invalid_argument("TestFunction: negative degree");
  if (degree > kMaxDegree) {
    throw std::invalid_argument("TestFunction: polynomial degree exceeds " +
                                std::to_string(kMaxDegree));
  }
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
  c.back() = 1;
  return polynomial(std::move(c));
}

TestFunction TestFunction::indicator(Rational a, Rational b) {
  if (a < 0 || b > 1 || !(a < b)) {
    throw std::invalid_argument("TestFunction: indicator needs 0 <= a < b <= 1");
  }
  TestFunction phi;
  phi.kind_ = Kind::kIndicator;
  phi.lower_ = std::move(a);
  phi.upper_ = std::move(b);
  return phi;
}

TestFunction TestFunction::dyadic(int level, long index) {
  if (level < 0 || level > kMaxDyadicLevel) {
    throw std::invalid_argument("TestFunction: dyadic level must be in 0.." +
                                std::to_string(kMaxDyadicLevel));
  }
  const long cells = 1L << level;
  if (index < 0 || index >= cells) throw std::invalid_argument("TestFunction: dyadic index out of range");
  Rational a(index, cells);
  Rational b(index + 1, cells);
  a.canonicalize();
  b.canonicalize();
  return indicator(std::move(a), std::move(b));
}

Rational TestFunction::integrate(const Rational& a, const Rational& b) const {
  if (kind_ == Kind::kIndicator) {
    const Rational lo = std::max(a, lower_);
    const Rational hi = std::min(b, upper_);
    return hi > lo ? Rational(hi - lo) : Rational(0);
  }
  // Horner on the antiderivative sum_k c_k t^{k+1} / (k+1).
  auto antiderivative = [this](const Rational& t) {
    Rational acc = 0;
    for (std::size_t k = coefficients_.size(); k-- > 0;) {
      acc = acc * t + coefficients_[k] / Rational(static_cast<long>(k) + 1);
    }
    return Rational(acc * t);
  };
  return antiderivative(b) - antiderivative(a);
}

std::string TestFunction::label() const {
  if (kind_ == Kind::kIndicator) {
    return "1[" + formatRational(lower_) + "," + formatRational(upper_) + "]";
  }
  if (coefficients_.empty()) return "0";
  std::size_t nonzero = 0;
  for (const auto& c : coefficients_) nonzero += (c != 0);
  const std::size_t deg = coefficients_.size() - 1;
  if (nonzero == 1 && coefficients_.back() == 1) {
    return deg == 0 ? "1" : "t^" + std::to_string(deg);
  }
  std::string out;
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    if (coefficients_[k] == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + formatRational(coefficients_[k]) + ")";
    if (k > 0) out += "t^" + std::to_string(k);
  }
  return out;
}

std::vector<Rational> mergeBreakpoints(const std::vector<Rational>& a,
                                       const std::vector<Rational>& b) {
  std::vector<Rational> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PiecewiseConstFn refine(const PiecewiseConstFn& f, const std::vector<Rational>& grid) {
  std::vector<Rational> values;
  values.reserve(grid.size() - 1);
  std::size_t piece = 0;
  const auto& b = f.breakpoints();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    while (b[piece + 1] <= grid[i]) ++piece;
    if (grid[i + 1] > b[piece + 1]) {
      throw std::invalid_argument("refine: grid does not contain all breakpoints");
    }
    values.push_back(f.intervalValues()[piece]);
  }
  return {grid, std::move(values)};
}

PiecewiseLinearFn refine(const PiecewiseLinearFn& u, const std::vector<Rational>& grid) {
  std::vector<Rational> values;
  values.reserve(grid.size());
  for (const auto& t : grid) values.push_back(u(t));
  return {grid, std::move(values)};
}

PiecewiseConstFn derivative(const PiecewiseLinearFn& u) {
  const auto& b = u.breakpoints();
  const auto& v = u.values();
  std::vector<Rational> slopes;
  slopes.reserve(u.pieces());
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    slopes.emplace_back((v[i + 1] - v[i]) / (b[i + 1] - b[i]));
  }
  return {b, std::move(slopes)};
}

std::pair<PiecewiseConstFn, PiecewiseConstFn> commonRefinement(const PiecewiseConstFn& f,
                                                               const PiecewiseConstFn& g) {
  const auto grid = mergeBreakpoints(f.breakpoints(), g.breakpoints());
  return {refine(f, grid), refine(g, grid)};
}

ExactReal powNorm(const PiecewiseConstFn& f, unsigned p) {
  if (p == 0) throw std::invalid_argument("powNorm: p must be positive");
  Rational sum = 0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    sum += powAbs(f.intervalValues()[i], p) * f.length(i);
  }
  return sum;
}

ExactReal lpNorm(const PiecewiseConstFn& f, unsigned p) { return root(powNorm(f, p), p); }

ExactReal powIntegral(const PiecewiseLinearFn& u, unsigned p) {
  if (p == 0) throw std::invalid_argument("powIntegral: p must be positive");
  const auto& b = u.breakpoints();
  const auto& v = u.values();
  const Rational p1(static_cast<long>(p) + 1);
  Rational sum = 0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const Rational len = b[i + 1] - b[i];
    const Rational& a = v[i];
    const Rational& c = v[i + 1];
    if (sgn(a) * sgn(c) < 0) {
      // Zero crossing at fraction a / (a - c) of the piece.
      const Rational s0 = a / (a - c);
      sum += len * (s0 * powAbs(a, p) + (1 - s0) * powAbs(c, p)) / p1;
    } else if (a == c) {
      sum += len * powAbs(a, p);
    } else {
      const Rational aa = abs(a);
      const Rational cc = abs(c);
      sum += len * (powAbs(cc, p + 1) - powAbs(aa, p + 1)) / (p1 * (cc - aa));
    }
  }
  return sum;
}

ExactReal pLaplacianPairing(const PiecewiseLinearFn& u, const PiecewiseLinearFn& w) {
  const PiecewiseConstFn du = derivative(u);
  const PiecewiseConstFn dw = derivative(w);
  const auto& bu = du.breakpoints();
  const auto& bw = dw.breakpoints();
  // Merge-walk both grids instead of materializing the refinement.
  Rational sum = 0;
  Rational left = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < du.pieces() && j < dw.pieces()) {
    const Rational& right = std::min(bu[i + 1], bw[j + 1]);
    const Rational& c = du.intervalValues()[i];
    if (c != 0) sum += signedSquare(c) * dw.intervalValues()[j] * (right - left);
    left = right;
    if (bu[i + 1] == left) ++i;
    if (bw[j + 1] == left) ++j;
  }
  return sum;
}

PiecewiseLinearFn linComb(const ExactReal& a, const PiecewiseLinearFn& u, const ExactReal& b,
                          const PiecewiseLinearFn& w) {
  const Rational& qa = requireExact(a, "linComb");
  const Rational& qb = requireExact(b, "linComb");
  auto grid = mergeBreakpoints(u.breakpoints(), w.breakpoints());
  std::vector<Rational> values;
  values.reserve(grid.size());
  for (const auto& t : grid) values.emplace_back(qa * u(t) + qb * w(t));
  return {std::move(grid), std::move(values)};
}

ExactReal testIntegral(const PiecewiseConstFn& f, const TestFunction& phi) {
  Rational sum = 0;
  const auto& b = f.breakpoints();
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const Rational& c = f.intervalValues()[i];
    if (c != 0) sum += c * phi.integrate(b[i], b[i + 1]);
  }
  return sum;
}

bool sameFunction(const PiecewiseLinearFn& u, const PiecewiseLinearFn& w) {
  for (const auto& t : mergeBreakpoints(u.breakpoints(), w.breakpoints())) {
    if (u(t) != w(t)) return false;
  }
  return true;
}

namespace {

nlohmann::json rationalsToJson(const std::vector<Rational>& qs) {
  auto out = nlohmann::json::array();
  for (const auto& q : qs) out.push_back(rationalToJson(q));
  return out;
}

std::vector<Rational> rationalsFromJson(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_array()) {
    throw std::invalid_argument(std::string("expected array field '") + key + "'");
  }
  std::vector<Rational> out;
  out.reserve(j[key].size());
  for (const auto& e : j[key]) out.push_back(rationalFromJson(e));
  return out;
}

}  // namespace

nlohmann::json toJson(const PiecewiseLinearFn& u) {
  return {{"breakpoints", rationalsToJson(u.breakpoints())}, {"values", rationalsToJson(u.values())}};
}

nlohmann::json toJson(const PiecewiseConstFn& f) {
  return {{"breakpoints", rationalsToJson(f.breakpoints())},
          {"values", rationalsToJson(f.intervalValues())}};
}

PiecewiseLinearFn linearFromJson(const nlohmann::json& j) {
  return {rationalsFromJson(j, "breakpoints"), rationalsFromJson(j, "values")};
}

PiecewiseConstFn constFromJson(const nlohmann::json& j) {
  return {rationalsFromJson(j, "breakpoints"), rationalsFromJson(j, "values")};
}

}  // namespace viproplab::pwcalc
