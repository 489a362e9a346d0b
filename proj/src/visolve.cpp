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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "viproplab/kernels.hpp"

namespace viproplab::visolve {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Box bounds converted once; the solver projects every iteration.
class Projector {
 public:
  explicit Projector(const FeasibleSet& set) : set_(set) {
    if (const auto* box = std::get_if<BoxSet>(&set)) {
      for (const auto& q : box->lower) lower_.push_back(toDouble(q));
      for (const auto& q : box->upper) upper_.push_back(toDouble(q));
    }
  }

  void operator()(std::span<const double> x, std::span<double> out) const {
    if (std::holds_alternative<BoxSet>(set_)) {
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(x[i], lower_[i], upper_[i]);
      return;
    }
    const auto& ball = std::get<BallSet>(set_);
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - ball.center[i];
      d2 += d * d;
    }
    const double d = std::sqrt(d2);
    const double scale = d > ball.radius ? ball.radius / d : 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      out[i] = ball.center[i] + (x[i] - ball.center[i]) * scale;
    }
  }

 private:
  const FeasibleSet& set_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

double naturalResidual(const Projector& proj, std::span<const double> x, std::span<const double> gx,
                       std::vector<double>& scratch) {
  for (std::size_t i = 0; i < x.size(); ++i) scratch[i] = x[i] - gx[i];
  proj(scratch, scratch);
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - scratch[i];
    r2 += d * d;
  }
  return std::sqrt(r2);
}

Rational boundFromJson(const nlohmann::json& j) {
  if (j.is_number()) return Rational(j.get<double>());
  if (j.is_string()) return parseRational(j.get<std::string>());
  return rationalFromJson(j);
}

std::vector<Rational> boundsFromJson(const nlohmann::json& j, std::size_t n, const char* what) {
  // A length-n array is per component; anything else is one scalar bound
  // (number, "p/q" or ["num","den"]).
  if (j.is_array() && j.size() == n) {
    std::vector<Rational> out;
    for (const auto& e : j) out.push_back(boundFromJson(e));
    return out;
  }
  try {
    return std::vector<Rational>(n, boundFromJson(j));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string("box ") + what + " must be a scalar or have " +
                                std::to_string(n) + " entries");
  }
}

std::vector<double> doublesFromJson(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) throw std::invalid_argument(std::string(what) + " entries must be numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

BoxSet uniformBox(std::size_t n, const Rational& lower, const Rational& upper) {
  return {std::vector<Rational>(n, lower), std::vector<Rational>(n, upper)};
}

BallSet centeredBall(std::size_t n, double radius) { return {std::vector<double>(n, 0.0), radius}; }

std::size_t dimension(const FeasibleSet& set) {
  if (const auto* box = std::get_if<BoxSet>(&set)) return box->lower.size();
  return std::get<BallSet>(set).center.size();
}

void validate(const FeasibleSet& set, std::size_t n) {
  if (const auto* box = std::get_if<BoxSet>(&set)) {
    if (box->lower.size() != n || box->upper.size() != n) {
      throw std::invalid_argument("box dimension does not match n = " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (box->lower[i] > box->upper[i]) {
        throw std::invalid_argument("box lower bound exceeds upper bound at component " +
                                    std::to_string(i));
      }
    }
    return;
  }
  const auto& ball = std::get<BallSet>(set);
  if (ball.center.size() != n) throw std::invalid_argument("ball dimension does not match n");
  if (!(ball.radius > 0) || !std::isfinite(ball.radius)) {
    throw std::invalid_argument("ball radius must be positive and finite");
  }
}

std::vector<double> project(const FeasibleSet& set, std::span<const double> x) {
  validate(set, x.size());
  std::vector<double> out(x.size());
  const Projector proj(set);
  proj(x, out);
  return out;
}

GalerkinOperator::GalerkinOperator(std::size_t n, std::vector<double> forcing)
    : n_(n), forcing_(std::move(forcing)) {
  if (n_ < 1) throw std::invalid_argument("GalerkinOperator: n must be >= 1");
  if (!forcing_.empty() && forcing_.size() != n_) {
    throw std::invalid_argument("GalerkinOperator: forcing has wrong length");
  }
}

std::vector<double> GalerkinOperator::operator()(std::span<const double> x) const {
  std::vector<double> out(n_);
  apply(x, out);
  return out;
}

void GalerkinOperator::apply(std::span<const double> x, std::span<double> out) const {
  kernels::galerkinApply(x, forcing_, out);
}

pwcalc::PiecewiseLinearFn GalerkinOperator::interpolant(std::span<const Rational> x) const {
  if (x.size() != n_) throw std::invalid_argument("interpolant: wrong dimension");
  std::vector<Rational> b;
  std::vector<Rational> v;
  const long m = static_cast<long>(n_) + 1;
  for (long i = 0; i <= m; ++i) {
    b.emplace_back(i, m);
    b.back().canonicalize();
    v.push_back(i == 0 || i == m ? Rational(0) : x[static_cast<std::size_t>(i - 1)]);
  }
  return {std::move(b), std::move(v)};
}

pwcalc::PiecewiseLinearFn GalerkinOperator::hat(std::size_t j) const {
  if (j >= n_) throw std::out_of_range("hat: node index out of range");
  std::vector<Rational> e(n_, Rational(0));
  e[j] = 1;
  return interpolant(e);
}

std::vector<Rational> GalerkinOperator::applyExact(std::span<const Rational> x) const {
  const auto u = interpolant(x);
  std::vector<Rational> out;
  out.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    Rational g = pwcalc::pLaplacianPairing(u, hat(j)).exact();
    if (!forcing_.empty()) g -= Rational(forcing_[j]);
    out.push_back(std::move(g));
  }
  return out;
}

GalerkinOperator assembleOperator(std::size_t n, std::vector<double> forcing) {
  return GalerkinOperator(n, std::move(forcing));
}

std::vector<double> constantLoad(std::size_t n, double c) {
  return std::vector<double>(n, c / static_cast<double>(n + 1));
}

DiscreteVI makeVI(GalerkinOperator op, FeasibleSet set, Tolerances tol) {
  validate(set, op.dimension());
  if (!(tol.eps > 0)) throw std::invalid_argument("eps must be positive");
  if (tol.maxIter < 0) throw std::invalid_argument("max_iter must be nonnegative");
  return {std::move(op), std::move(set), tol};
}

double residual(const DiscreteVI& vi, std::span<const double> x) {
  if (x.size() != vi.op.dimension()) throw std::invalid_argument("residual: wrong dimension");
  const Projector proj(vi.set);
  std::vector<double> scratch(x.size());
  return naturalResidual(proj, x, vi.op(x), scratch);
}

SolveResult extragradientSolve(const DiscreteVI& vi, std::span<const double> x0, double step) {
  const std::size_t n = vi.op.dimension();
  if (x0.size() != n) throw std::invalid_argument("extragradientSolve: x0 has wrong dimension");
  if (!(step > 0)) throw std::invalid_argument("extragradientSolve: step must be positive");

  const Projector proj(vi.set);
  std::vector<double> x(n), gx(n), y(n), gy(n), trial(n), scratch(n);
  proj(x0, x);
  vi.op.apply(x, gx);

  SolveResult best;
  best.residual = std::numeric_limits<double>::infinity();
  double s = step;
  for (long it = 0;; ++it) {
    const double r = naturalResidual(proj, x, gx, scratch);
    if (r < best.residual) {
      best.x = x;
      best.residual = r;
    }
    best.iterations = it;
    best.step = s;
    if (r <= vi.tol.eps) {
      best.converged = true;
      return best;
    }
    if (it >= vi.tol.maxIter) return best;

    for (;;) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - s * gx[i];
      proj(trial, y);
      vi.op.apply(y, gy);
      double lhs = 0.0;
      double d2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - y[i];
        lhs += (gx[i] - gy[i]) * d;
        d2 += d * d;
      }
      if (lhs <= d2 / (2.0 * s) || s < 1e-16) break;
      s *= kBacktrackFactor;
    }
    for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - s * gy[i];
    proj(trial, x);
    vi.op.apply(x, gx);
  }
}

SolveResult extragradientSolve(const DiscreteVI& vi, double step) {
  const std::vector<double> zero(vi.op.dimension(), 0.0);
  return extragradientSolve(vi, project(vi.set, zero), step);
}

ClosednessReport perturbationClosedness(const DiscreteVI& base, std::span<const double> direction,
                                        int levels, int order) {
  const std::size_t n = base.op.dimension();
  if (direction.size() != n) throw std::invalid_argument("perturbationClosedness: wrong dimension");
  if (levels < 1 || order < 0) throw std::invalid_argument("perturbationClosedness: bad levels/order");
  order = std::min(order, levels - 1);

  ClosednessReport report;
  std::vector<double> start = project(base.set, std::vector<double>(n, 0.0));
  for (int m = 1; m <= levels; ++m) {
    const double delta = std::ldexp(1.0, -m);
    std::vector<double> f = base.op.forcing();
    f.resize(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) f[i] += delta * direction[i];
    const DiscreteVI perturbed{GalerkinOperator(n, std::move(f)), base.set, base.tol};
    report.deltas.push_back(delta);
    report.solves.push_back(extragradientSolve(perturbed, start));
    start = report.solves.back().x;
  }

  // Richardson table over the last order+1 levels; delta halves per level.
  std::vector<std::vector<double>> table;
  for (int i = levels - order - 1; i < levels; ++i) table.push_back(report.solves[static_cast<std::size_t>(i)].x);
  for (int j = 1; j <= order; ++j) {
    const double w = std::ldexp(1.0, j);
    for (int i = order; i >= j; --i) {
      for (std::size_t c = 0; c < n; ++c) {
        table[static_cast<std::size_t>(i)][c] =
            (w * table[static_cast<std::size_t>(i)][c] - table[static_cast<std::size_t>(i - 1)][c]) / (w - 1);
      }
    }
  }
  report.limit = project(base.set, table.back());
  report.limitResidual = residual(base, report.limit);
  if (levels >= 2) {
    const auto& a = report.solves[static_cast<std::size_t>(levels - 1)].x;
    const auto& b = report.solves[static_cast<std::size_t>(levels - 2)].x;
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    report.lastStepChange = norm(d);
  }
  return report;
}

Problem problemFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("problem must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long>() < 1) {
    throw std::invalid_argument("'n' must be a positive integer");
  }
  const auto n = j["n"].get<std::size_t>();
  std::vector<double> forcing;
  if (j.contains("forcing")) forcing = doublesFromJson(j["forcing"], "forcing");

  if (!j.contains("set") || !j["set"].is_object()) throw std::invalid_argument("'set' object required");
  const auto& s = j["set"];
  const std::string kind = s.value("kind", "");
  FeasibleSet set;
  if (kind == "box") {
    if (!s.contains("lower") || !s.contains("upper")) {
      throw std::invalid_argument("box needs 'lower' and 'upper'");
    }
    set = BoxSet{boundsFromJson(s["lower"], n, "lower"), boundsFromJson(s["upper"], n, "upper")};
  } else if (kind == "ball") {
    if (!s.contains("radius") || !s["radius"].is_number()) throw std::invalid_argument("ball needs 'radius'");
    BallSet ball{std::vector<double>(n, 0.0), s["radius"].get<double>()};
    if (s.contains("center")) ball.center = doublesFromJson(s["center"], "center");
    set = std::move(ball);
  } else {
    throw std::invalid_argument("set kind must be \"box\" or \"ball\"");
  }

  Tolerances tol;
  if (j.contains("eps")) tol.eps = j["eps"].get<double>();
  if (j.contains("max_iter")) tol.maxIter = j["max_iter"].get<long>();

  Problem p{makeVI(assembleOperator(n, std::move(forcing)), std::move(set), tol), {}, kDefaultStep};
  if (j.contains("step")) p.step = j["step"].get<double>();
  if (j.contains("x0")) {
    p.x0 = doublesFromJson(j["x0"], "x0");
    if (p.x0.size() != n) throw std::invalid_argument("x0 has wrong length");
  }
  return p;
}

nlohmann::json toJson(const SolveResult& r) {
  return {{"x", r.x},
          {"residual", r.residual},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"step", r.step},
          {"approx", true},
          {"note", "finite-dimensional Galerkin analogue; says nothing directly about the continuous problem"}};
}

}  // namespace viproplab::visolve
