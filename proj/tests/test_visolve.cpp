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

#include "viproplab/visolve.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "test_support.hpp"

namespace viproplab::visolve {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::vector<double> minus(std::span<const double> a, std::span<const double> b) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Unconstrained solution for the constant load f_j = h: the fluxes |s_i| s_i
// drop by h across every node and are antisymmetric about the middle.
std::vector<double> constantLoadSolution(std::size_t n) {
  const double h = 1.0 / static_cast<double>(n + 1);
  std::vector<double> x(n, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double flux = h * (static_cast<double>(n) / 2.0 - static_cast<double>(i));
    acc += std::copysign(std::sqrt(std::abs(flux)), flux) * h;
    x[i] = acc;
  }
  return x;
}

TEST(OperatorTest, SingleNodeClosedForm) {
  const auto op = assembleOperator(1);
  for (double c : {-2.0, -0.5, 0.0, 0.25, 3.0}) {
    const std::vector<double> x{c};
    EXPECT_DOUBLE_EQ(op(x)[0], 8.0 * std::abs(c) * c);
  }
  const auto forced = assembleOperator(1, {8.0});
  EXPECT_DOUBLE_EQ(forced(std::vector<double>{1.0})[0], 0.0);
}

TEST(OperatorTest, ZeroMapsToMinusForcing) {
  std::mt19937_64 rng(testing::sweepSeed() + 30);
  std::uniform_real_distribution<double> dist(-1, 1);
  std::vector<double> f(17);
  for (auto& v : f) v = dist(rng);
  const auto op = assembleOperator(17, f);
  const auto g = op(std::vector<double>(17, 0.0));
  for (std::size_t j = 0; j < 17; ++j) EXPECT_EQ(g[j], -f[j]);
}

TEST(OperatorTest, ExactRouteMatchesKernelAndCoercivityIdentity) {
  std::mt19937_64 rng(testing::sweepSeed() + 31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 9);
    std::vector<Rational> xq(n);
    std::vector<double> xd(n);
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) {
      xq[j] = testing::randomRational(rng, 20, 8);
      xd[j] = xq[j].get_d();
      f[j] = testing::randomRational(rng, 10, 4).get_d();
    }
    const auto op = assembleOperator(n, f);
    const auto exact = op.applyExact(xq);
    const auto approx = op(xd);
    Rational pairing = 0;
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_NEAR(approx[j], exact[j].get_d(), 1e-12 * (1 + std::abs(exact[j].get_d())));
      pairing += exact[j] * xq[j];
    }
    // <G(x), x> = ||u'||_3^3 - <f, x> exactly.
    const auto u = op.interpolant(xq);
    Rational expected = pwcalc::powNorm(pwcalc::derivative(u), 3).exact();
    for (std::size_t j = 0; j < n; ++j) expected -= Rational(f[j]) * xq[j];
    EXPECT_EQ(pairing, expected);
  }
}

TEST(OperatorTest, MonotoneInExactArithmetic) {
  std::mt19937_64 rng(testing::sweepSeed() + 32);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 7);
    const auto op = assembleOperator(n, constantLoad(n));
    std::vector<Rational> x(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = testing::randomRational(rng, 16, 8);
      y[j] = testing::randomRational(rng, 16, 8);
    }
    const auto gx = op.applyExact(x);
    const auto gy = op.applyExact(y);
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += (gx[j] - gy[j]) * (x[j] - y[j]);
    EXPECT_GE(s, 0);
  }
}

TEST(OperatorTest, LocalLipschitzBound) {
  // |s|s has slope 2|s|, so on the ball ||x||_inf <= R every node update is
  // bounded by 2 * (2R(n+1)) * (n+1) * 2 * ||x - y||_inf.
  std::mt19937_64 rng(testing::sweepSeed() + 33);
  std::uniform_real_distribution<double> dist(-1, 1);
  const std::size_t n = 12;
  const auto op = assembleOperator(n);
  const double lip = 2 * (2.0 * (n + 1)) * (n + 1) * 2;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = dist(rng);
      y[j] = dist(rng);
    }
    const auto d = minus(op(x), op(y));
    double dg = 0, dx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      dg = std::max(dg, std::abs(d[j]));
      dx = std::max(dx, std::abs(x[j] - y[j]));
    }
    EXPECT_LE(dg, lip * dx);
  }
}

TEST(ProjectionTest, BoxAndBall) {
  const FeasibleSet box = uniformBox(3, Rational(-1), Rational(1, 2));
  const auto pb = project(box, std::vector<double>{-3.0, 0.25, 7.0});
  EXPECT_EQ(pb, (std::vector<double>{-1.0, 0.25, 0.5}));
  const FeasibleSet ball = centeredBall(2, 1.0);
  const auto inside = project(ball, std::vector<double>{0.3, -0.4});
  EXPECT_EQ(inside, (std::vector<double>{0.3, -0.4}));
  const auto outside = project(ball, std::vector<double>{3.0, 4.0});
  EXPECT_NEAR(outside[0], 0.6, 1e-15);
  EXPECT_NEAR(outside[1], 0.8, 1e-15);
  const FeasibleSet shifted = BallSet{{1.0, 1.0}, 1.0};
  const auto ps = project(shifted, std::vector<double>{1.0, 4.0});
  EXPECT_NEAR(ps[0], 1.0, 1e-15);
  EXPECT_NEAR(ps[1], 2.0, 1e-15);
}

TEST(ProjectionTest, Idempotent) {
  std::mt19937_64 rng(testing::sweepSeed() + 34);
  std::normal_distribution<double> dist(0, 3);
  const std::vector<FeasibleSet> sets{uniformBox(5, Rational(-1), Rational(2)), centeredBall(5, 1.5)};
  for (const auto& set : sets) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> x(5);
      for (auto& v : x) v = dist(rng);
      const auto p = project(set, x);
      const auto pp = project(set, p);
      for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(p[i], pp[i], 1e-14);
    }
  }
}

TEST(ValidationTest, Rejections) {
  EXPECT_THROW(assembleOperator(0), std::invalid_argument);
  EXPECT_THROW(assembleOperator(3, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(makeVI(assembleOperator(2), uniformBox(3, Rational(-1), Rational(1))), std::invalid_argument);
  EXPECT_THROW(makeVI(assembleOperator(2), uniformBox(2, Rational(1), Rational(0))), std::invalid_argument);
  EXPECT_THROW(makeVI(assembleOperator(2), centeredBall(2, -1.0)), std::invalid_argument);
  EXPECT_THROW(makeVI(assembleOperator(2), centeredBall(2, 1.0), {0.0, 10}), std::invalid_argument);
  const auto vi = makeVI(assembleOperator(2), centeredBall(2, 1.0));
  EXPECT_THROW(extragradientSolve(vi, std::vector<double>{0.0}), std::invalid_argument);
  EXPECT_THROW(extragradientSolve(vi, 0.0), std::invalid_argument);
  EXPECT_THROW(assembleOperator(2).hat(2), std::out_of_range);
}

TEST(ResidualTest, ForcedOriginAndFixedPoint) {
  const auto f = constantLoad(4, 0.5);
  const auto vi = makeVI(assembleOperator(4, f), uniformBox(4, Rational(-1), Rational(1)));
  EXPECT_NEAR(residual(vi, std::vector<double>(4, 0.0)), norm(f), 1e-15);
  const auto unforced = makeVI(assembleOperator(4), uniformBox(4, Rational(-1), Rational(1)));
  EXPECT_EQ(residual(unforced, std::vector<double>(4, 0.0)), 0.0);
}

TEST(SolverTest, UnforcedIsExactlyZero) {
  const auto vi = makeVI(assembleOperator(16), uniformBox(16, Rational(-1), Rational(1)));
  const auto r = extragradientSolve(vi);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
  for (double v : r.x) EXPECT_EQ(v, 0.0);
}

TEST(SolverTest, SingleNodeInterior) {
  const auto vi = makeVI(assembleOperator(1, {8.0}), uniformBox(1, Rational(-2), Rational(2)));
  const auto r = extragradientSolve(vi);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_LE(r.residual, 1e-8);
}

TEST(SolverTest, SingleNodeActiveBoundSatisfiesInequality) {
  const auto vi = makeVI(assembleOperator(1, {16.0}), uniformBox(1, Rational(-1), Rational(1)));
  const auto r = extragradientSolve(vi);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-9);
  // <G(x*), y - x*> >= 0 over a grid of A.
  const double g = vi.op(r.x)[0];
  for (int i = 0; i <= 20000; ++i) {
    const double y = -1.0 + i * 1e-4;
    EXPECT_GE(g * (y - r.x[0]), -1e-8);
  }
}

TEST(SolverTest, ConstantLoadMatchesFluxSolution) {
  const std::size_t n = 32;
  auto vi = makeVI(assembleOperator(n, constantLoad(n)), uniformBox(n, Rational(-1), Rational(1)));
  const auto r = extragradientSolve(vi);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.residual, 1e-8);
  const auto oracle = constantLoadSolution(n);
  for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(r.x[j], oracle[j], 1e-6);

  vi.tol.eps = 1e-12;
  const auto tight = extragradientSolve(vi);
  ASSERT_TRUE(tight.converged);
  EXPECT_LE(norm(minus(r.x, tight.x)), 1e-6);
  for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(tight.x[j], oracle[j], 1e-9);
}

TEST(SolverTest, ActiveBallGivesOutwardNormal) {
  const std::size_t n = 32;
  const auto vi = makeVI(assembleOperator(n, constantLoad(n)), centeredBall(n, 0.5));
  const auto r = extragradientSolve(vi);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(norm(r.x), 0.5, 1e-9);
  // At a boundary solution -G(x*) points along x*.
  const auto g = vi.op(r.x);
  EXPECT_NEAR(dot(g, r.x) / (norm(g) * norm(r.x)), -1.0, 1e-6);
}

TEST(SolverTest, ReportsNonConvergence) {
  const auto vi = makeVI(assembleOperator(32, constantLoad(32)), uniformBox(32, Rational(-1), Rational(1)),
                         {1e-8, 10});
  const auto r = extragradientSolve(vi);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 10);
  EXPECT_GT(r.residual, 1e-8);
}

TEST(ClosednessTest, ExtrapolatedLimitSolvesBaseProblem) {
  const std::size_t n = 16;
  const auto base = makeVI(assembleOperator(n, constantLoad(n)), uniformBox(n, Rational(-1), Rational(1, 5)));
  const std::vector<double> direction(n, 1.0 / (n + 1));
  const auto rep = perturbationClosedness(base, direction);
  ASSERT_EQ(rep.deltas.size(), 10u);
  EXPECT_EQ(rep.deltas.front(), 0.5);
  EXPECT_EQ(rep.deltas.back(), std::ldexp(1.0, -10));
  for (const auto& s : rep.solves) EXPECT_TRUE(s.converged);
  EXPECT_LE(rep.limitResidual, 1e-6);
  const auto direct = extragradientSolve(base);
  EXPECT_LE(norm(minus(rep.limit, direct.x)), 1e-5);
  EXPECT_THROW(perturbationClosedness(base, std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST(ProblemJsonTest, ParsesBoxForms) {
  const auto p = problemFromJson(nlohmann::json::parse(R"({
    "n": 3, "forcing": [1, 2, 3],
    "set": {"kind": "box", "lower": "-1/2", "upper": [1, ["3","2"], 2]},
    "eps": 1e-6, "max_iter": 500, "step": 0.05})"));
  EXPECT_EQ(p.vi.op.dimension(), 3u);
  EXPECT_EQ(p.vi.op.forcing(), (std::vector<double>{1, 2, 3}));
  const auto& box = std::get<BoxSet>(p.vi.set);
  EXPECT_EQ(box.lower, std::vector<Rational>(3, Rational(-1, 2)));
  EXPECT_EQ(box.upper[1], Rational(3, 2));
  EXPECT_EQ(p.vi.tol.eps, 1e-6);
  EXPECT_EQ(p.vi.tol.maxIter, 500);
  EXPECT_EQ(p.step, 0.05);
  EXPECT_TRUE(p.x0.empty());  // solver starts from P_A(0)
}

TEST(ProblemJsonTest, ParsesBallAndRejectsBadInput) {
  const auto p = problemFromJson(nlohmann::json::parse(R"({"n": 2, "set": {"kind": "ball", "radius": 2}})"));
  EXPECT_EQ(std::get<BallSet>(p.vi.set).radius, 2.0);
  EXPECT_TRUE(p.vi.op.forcing().empty());
  for (const char* bad : {R"([1])", R"({"set": {"kind": "ball", "radius": 1}})",
                          R"({"n": 0, "set": {"kind": "ball", "radius": 1}})",
                          R"({"n": 2, "set": {"kind": "cube"}})", R"({"n": 2, "set": {"kind": "box", "lower": -1}})",
                          R"({"n": 2, "set": {"kind": "box", "lower": 1, "upper": -1}})",
                          R"({"n": 2, "set": {"kind": "box", "lower": [0, 0, 0], "upper": 1}})",
                          R"({"n": 2, "forcing": [1], "set": {"kind": "ball", "radius": 1}})",
                          R"({"n": 2, "x0": [1], "set": {"kind": "ball", "radius": 1}})"}) {
    EXPECT_ANY_THROW(problemFromJson(nlohmann::json::parse(bad))) << bad;
  }
}

TEST(ProblemJsonTest, ResultSerialization) {
  const auto vi = makeVI(assembleOperator(1, {8.0}), uniformBox(1, Rational(-2), Rational(2)));
  const auto j = toJson(extragradientSolve(vi));
  EXPECT_EQ(j["approx"], true);
  EXPECT_EQ(j["converged"], true);
  EXPECT_EQ(j["x"].size(), 1u);
  EXPECT_TRUE(j["residual"].is_number());
  EXPECT_TRUE(j["iterations"].is_number_integer());
  EXPECT_TRUE(j["step"].is_number());
  EXPECT_NE(j["note"].get<std::string>().find("analogue"), std::string::npos);
}

}  // namespace
}  // namespace viproplab::visolve
