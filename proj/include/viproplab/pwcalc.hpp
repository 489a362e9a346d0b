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

#ifndef VIPROPLAB_PWCALC_HPP_
#define VIPROPLAB_PWCALC_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "viproplab/exact_real.hpp"

// Exact calculus on [0,1] for continuous piecewise-linear functions with zero
// boundary values and their piecewise-constant weak derivatives. Every
// operation on rational input returns an exact rational.
namespace viproplab::pwcalc {

// Continuous piecewise-linear function on [0,1], zero at both ends.
//
// Breakpoints are strictly increasing exact rationals starting at 0 and
// ending at 1; there is one nodal value per breakpoint. The constructor
// throws std::invalid_argument if any of this fails.
class PiecewiseLinearFn {
 public:
  PiecewiseLinearFn(std::vector<Rational> breakpoints, std::vector<Rational> values);

  static PiecewiseLinearFn zero();

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t pieces() const { return breakpoints_.size() - 1; }

  // Linear interpolation; t must lie in [0,1].
  Rational operator()(const Rational& t) const;

  // Same representation, not just the same function. Use sameFunction()
  // to compare across different grids.
  friend bool operator==(const PiecewiseLinearFn&, const PiecewiseLinearFn&) = default;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
};

// Step function on [0,1]: one value per open interval between breakpoints.
class PiecewiseConstFn {
 public:
  PiecewiseConstFn(std::vector<Rational> breakpoints, std::vector<Rational> intervalValues);

  static PiecewiseConstFn constant(Rational c);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& intervalValues() const { return intervalValues_; }
  std::size_t pieces() const { return intervalValues_.size(); }
  Rational length(std::size_t i) const { return breakpoints_[i + 1] - breakpoints_[i]; }

  // Value on the interval containing t. At an interior breakpoint the
  // interval to the right is used; at t == 1 the last interval.
  const Rational& operator()(const Rational& t) const;

  friend bool operator==(const PiecewiseConstFn&, const PiecewiseConstFn&) = default;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> intervalValues_;
};

// Test function for weak-convergence probes: a polynomial with rational
// coefficients of degree at most 8, or the indicator of a rational
// sub-interval of [0,1]. Unsupported kinds are rejected at construction.
class TestFunction {
 public:
  enum class Kind { kPolynomial, kIndicator };

  static constexpr int kMaxDegree = 8;
  static constexpr int kMaxDyadicLevel = 8;

  // coefficients[i] multiplies t^i. Trailing zeros are dropped.
  static TestFunction polynomial(std::vector<Rational> coefficients);
  static TestFunction monomial(int degree);
  // Indicator of [a,b] with 0 <= a < b <= 1.
  static TestFunction indicator(Rational a, Rational b);
  // Indicator of [index / 2^level, (index+1) / 2^level].
  static TestFunction dyadic(int level, long index);

  Kind kind() const { return kind_; }
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  const Rational& lower() const { return lower_; }
  const Rational& upper() const { return upper_; }

  // Exact integral of the test function over [a,b].
  Rational integrate(const Rational& a, const Rational& b) const;

  // Human-readable label ("t^3", "1[1/4,3/8]", ...).
  std::string label() const;

 private:
  TestFunction() = default;

  Kind kind_ = Kind::kPolynomial;
  std::vector<Rational> coefficients_;
  Rational lower_;
  Rational upper_;
};

// Sorted union of two breakpoint lists, deduplicated by exact equality.
std::vector<Rational> mergeBreakpoints(const std::vector<Rational>& a,
                                       const std::vector<Rational>& b);

// Re-expresses f on a finer grid that contains all of f's breakpoints.
PiecewiseConstFn refine(const PiecewiseConstFn& f, const std::vector<Rational>& grid);
PiecewiseLinearFn refine(const PiecewiseLinearFn& u, const std::vector<Rational>& grid);

PiecewiseConstFn derivative(const PiecewiseLinearFn& u);

std::pair<PiecewiseConstFn, PiecewiseConstFn> commonRefinement(const PiecewiseConstFn& f,
                                                               const PiecewiseConstFn& g);

// Integral of |f|^p over [0,1], i.e. the p-th power of the L^p norm. Exact.
ExactReal powNorm(const PiecewiseConstFn& f, unsigned p);

// The L^p norm itself, powNorm^(1/p). Approximate.
ExactReal lpNorm(const PiecewiseConstFn& f, unsigned p);

// Integral of |u|^p over [0,1] for a piecewise-linear u. Exact; each linear
// piece is split at its zero crossing.
ExactReal powIntegral(const PiecewiseLinearFn& u, unsigned p);

// <F(u), w> = integral of |u'| u' w' for the p = 3 Laplacian.
ExactReal pLaplacianPairing(const PiecewiseLinearFn& u, const PiecewiseLinearFn& w);

// Pointwise a*u + b*w on the merged grid. a and b must be exact.
PiecewiseLinearFn linComb(const ExactReal& a, const PiecewiseLinearFn& u, const ExactReal& b,
                          const PiecewiseLinearFn& w);

ExactReal testIntegral(const PiecewiseConstFn& f, const TestFunction& phi);

// True if u and w agree as functions (compared on the merged grid).
bool sameFunction(const PiecewiseLinearFn& u, const PiecewiseLinearFn& w);

nlohmann::json toJson(const PiecewiseLinearFn& u);
nlohmann::json toJson(const PiecewiseConstFn& f);
PiecewiseLinearFn linearFromJson(const nlohmann::json& j);
PiecewiseConstFn constFromJson(const nlohmann::json& j);

}  // namespace viproplab::pwcalc

#endif  // VIPROPLAB_PWCALC_HPP_
