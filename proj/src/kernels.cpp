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

#include "viproplab/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace viproplab::kernels {

namespace {

ExactReal gapAt(const FunctionSequence& seq, const PiecewiseLinearFn& y, long k) {
  const PiecewiseLinearFn xk = seq(k);
  return pwcalc::pLaplacianPairing(xk, pwcalc::linComb(1, xk, -1, y));
}

Rational integralAt(const FunctionSequence& seq, const TestFunction& phi, long k) {
  return pwcalc::testIntegral(pwcalc::derivative(seq(k)), phi).exact();
}

void checkSpans(std::span<const double> x, std::span<const double> forcing, std::span<double> out) {
  if (out.size() != x.size() || (!forcing.empty() && forcing.size() != x.size())) {
    throw std::invalid_argument("galerkinApply: dimension mismatch");
  }
}

inline double slope(std::span<const double> x, std::size_t i, double inv_h) {
  // Interval i joins node i (x_{i-1} in 0-based storage) and node i+1.
  const double left = i == 0 ? 0.0 : x[i - 1];
  const double right = i == x.size() ? 0.0 : x[i];
  return (right - left) * inv_h;
}

inline double signedSquare(double s) { return std::fabs(s) * s; }

}  // namespace

std::vector<ExactReal> pairingSweep(const FunctionSequence& seq, const PiecewiseLinearFn& y, long kMax) {
  std::vector<ExactReal> out(kMax > 0 ? static_cast<std::size_t>(kMax) : 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 1; k <= kMax; ++k) {
    out[static_cast<std::size_t>(k - 1)] = gapAt(seq, y, k);
  }
  return out;
}

std::vector<ExactReal> pairingSweepSerial(const FunctionSequence& seq, const PiecewiseLinearFn& y,
                                          long kMax) {
  std::vector<ExactReal> out;
  for (long k = 1; k <= kMax; ++k) out.push_back(gapAt(seq, y, k));
  return out;
}

std::vector<Rational> testIntegralSweep(const FunctionSequence& seq, const TestFunction& phi,
                                        long kMax) {
  std::vector<Rational> out(kMax > 0 ? static_cast<std::size_t>(kMax) : 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 1; k <= kMax; ++k) {
    out[static_cast<std::size_t>(k - 1)] = integralAt(seq, phi, k);
  }
  return out;
}

std::vector<Rational> testIntegralSweepSerial(const FunctionSequence& seq, const TestFunction& phi,
                                              long kMax) {
  std::vector<Rational> out;
  for (long k = 1; k <= kMax; ++k) out.push_back(integralAt(seq, phi, k));
  return out;
}

void galerkinApply(std::span<const double> x, std::span<const double> forcing, std::span<double> out) {
  checkSpans(x, forcing, out);
  const std::size_t n = x.size();
  if (n < kGalerkinParallelThreshold) {
    galerkinApplySerial(x, forcing, out);
    return;
  }
  const double inv_h = static_cast<double>(n + 1);
  const bool forced = !forcing.empty();
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j) {
    // Node j+1 (1-based) sits between intervals j and j+1.
    const double g = signedSquare(slope(x, j, inv_h)) - signedSquare(slope(x, j + 1, inv_h));
    out[j] = forced ? g - forcing[j] : g;
  }
}

void galerkinApplySerial(std::span<const double> x, std::span<const double> forcing,
                         std::span<double> out) {
  checkSpans(x, forcing, out);
  const std::size_t n = x.size();
  const double inv_h = static_cast<double>(n + 1);
  double prev = signedSquare(slope(x, 0, inv_h));
  for (std::size_t j = 0; j < n; ++j) {
    const double next = signedSquare(slope(x, j + 1, inv_h));
    out[j] = prev - next - (forcing.empty() ? 0.0 : forcing[j]);
    prev = next;
  }
}

}  // namespace viproplab::kernels
