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

#ifndef VIPROPLAB_VISOLVE_HPP_
#define VIPROPLAB_VISOLVE_HPP_

#include <span>
#include <variant>
#include <vector>

#include "json.hpp"
#include "viproplab/exact_real.hpp"
#include "viproplab/pwcalc.hpp"

// Finite-dimensional variational inequalities for the Galerkin p = 3
// Laplacian:  find x in A with <G(x), y - x> >= 0 for all y in A.
//
// This is a discrete demonstration of existence for bounded pseudomonotone
// operators on compact convex sets, not the infinite-dimensional statement.
namespace viproplab::visolve {

// Componentwise bounds lower <= upper.
struct BoxSet {
  std::vector<Rational> lower;
  std::vector<Rational> upper;
};

struct BallSet {
  std::vector<double> center;
  double radius = 1.0;
};

using FeasibleSet = std::variant<BoxSet, BallSet>;

BoxSet uniformBox(std::size_t n, const Rational& lower, const Rational& upper);
BallSet centeredBall(std::size_t n, double radius);

// Throws std::invalid_argument on inconsistent bounds, radius <= 0 or a
// dimension other than n.
void validate(const FeasibleSet& set, std::size_t n);
std::size_t dimension(const FeasibleSet& set);

// Euclidean projection: clamp for boxes, radial scaling for balls.
std::vector<double> project(const FeasibleSet& set, std::span<const double> x);

// G(x)_j = <F(u_x), phi_j> - f_j on n interior nodes of the uniform grid,
// u_x the piecewise-linear interpolant of x and phi_j the hat at node j.
class GalerkinOperator {
 public:
  explicit GalerkinOperator(std::size_t n, std::vector<double> forcing = {});

  std::size_t dimension() const { return n_; }
  const std::vector<double>& forcing() const { return forcing_; }

  std::vector<double> operator()(std::span<const double> x) const;
  void apply(std::span<const double> x, std::span<double> out) const;

  // Same operator evaluated with exact pwcalc pairings against the hat
  // basis; used as the reference for the floating-point kernel.
  std::vector<Rational> applyExact(std::span<const Rational> x) const;

  pwcalc::PiecewiseLinearFn interpolant(std::span<const Rational> x) const;
  pwcalc::PiecewiseLinearFn hat(std::size_t j) const;

 private:
  std::size_t n_;
  std::vector<double> forcing_;  // empty: no load
};

// Throws std::invalid_argument for n < 1 or a forcing of the wrong length.
GalerkinOperator assembleOperator(std::size_t n, std::vector<double> forcing = {});

// Load vector of the constant right-hand side c: f_j = c * h.
std::vector<double> constantLoad(std::size_t n, double c = 1.0);

struct Tolerances {
  double eps = 1e-8;
  long maxIter = 100000;
};

struct DiscreteVI {
  GalerkinOperator op;
  FeasibleSet set;
  Tolerances tol;
};

DiscreteVI makeVI(GalerkinOperator op, FeasibleSet set, Tolerances tol = {});

struct SolveResult {
  std::vector<double> x;
  double residual = 0.0;
  long iterations = 0;
  bool converged = false;
  double step = 0.0;  // final step after backtracking
};

// Natural residual ||x - P_A(x - G(x))||_2.
double residual(const DiscreteVI& vi, std::span<const double> x);

inline constexpr double kDefaultStep = 0.1;
inline constexpr double kBacktrackFactor = 0.5;

// Extragradient with backtracking:
//   y = P(x - s G(x)),  x+ = P(x - s G(y)),
// halving s while <G(x) - G(y), x - y> > ||x - y||^2 / (2s). Stops when the
// natural residual is <= eps or after maxIter iterations; on failure
// returns the iterate with the smallest residual seen.
SolveResult extragradientSolve(const DiscreteVI& vi, std::span<const double> x0,
                               double step = kDefaultStep);
// Starts from P_A(0).
SolveResult extragradientSolve(const DiscreteVI& vi, double step = kDefaultStep);

// Solves the problems with forcing f + delta_m * direction, delta_m = 2^-m
// for m = 1..levels, then estimates the limit of the solutions by Richardson
// extrapolation in delta over the last (order + 1) levels and projects the
// estimate onto A.
struct ClosednessReport {
  std::vector<double> deltas;
  std::vector<SolveResult> solves;
  std::vector<double> limit;
  double limitResidual = 0.0;  // residual on the unperturbed problem
  double lastStepChange = 0.0;  // ||x_levels - x_{levels-1}||
};

ClosednessReport perturbationClosedness(const DiscreteVI& base, std::span<const double> direction,
                                        int levels = 10, int order = 3);

// Problem file:
//   {"n": 32, "forcing": [...], "set": {"kind": "box", "lower": ..., "upper": ...}
//    | {"kind": "ball", "center": [...], "radius": r}, "eps": 1e-8, "max_iter": 100000}
// Box bounds are numbers, "p/q" strings or ["num","den"] pairs, either one
// per component or a single scalar. "forcing" defaults to zero, "center" to
// the origin. Optional: "x0" (vector), "step" (initial step).
struct Problem {
  DiscreteVI vi;
  std::vector<double> x0;  // empty: start from P_A(0)
  double step = kDefaultStep;
};

// Throws std::invalid_argument (or nlohmann::json::exception) on bad input.
Problem problemFromJson(const nlohmann::json& j);
nlohmann::json toJson(const SolveResult& r);

}  // namespace viproplab::visolve

#endif  // VIPROPLAB_VISOLVE_HPP_
