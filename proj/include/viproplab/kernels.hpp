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

#ifndef VIPROPLAB_KERNELS_HPP_
#define VIPROPLAB_KERNELS_HPP_

#include <functional>
#include <span>
#include <vector>

#include "viproplab/exact_real.hpp"
#include "viproplab/pwcalc.hpp"

// Data-parallel inner loops. Each OpenMP kernel has a plain serial
// counterpart with identical semantics; tests compare the two and the
// benchmark times them.
namespace viproplab::kernels {

using pwcalc::PiecewiseLinearFn;
using pwcalc::TestFunction;

// k -> x_k for k >= 1. Must be safe to call concurrently.
using FunctionSequence = std::function<PiecewiseLinearFn(long)>;

// out[k-1] = <F(x_k), x_k - y> for k = 1..kMax. Results are in index order
// regardless of evaluation order.
std::vector<ExactReal> pairingSweep(const FunctionSequence& seq, const PiecewiseLinearFn& y, long kMax);
std::vector<ExactReal> pairingSweepSerial(const FunctionSequence& seq, const PiecewiseLinearFn& y,
                                          long kMax);

// out[k-1] = integral of x_k' * phi for k = 1..kMax.
std::vector<Rational> testIntegralSweep(const FunctionSequence& seq, const TestFunction& phi,
                                        long kMax);
std::vector<Rational> testIntegralSweepSerial(const FunctionSequence& seq, const TestFunction& phi,
                                              long kMax);

// Galerkin p-Laplacian on n = x.size() interior nodes of the uniform grid
// with spacing h = 1/(n+1), zero boundary values:
//   out_j = |s_{j-1}| s_{j-1} - |s_j| s_j - forcing_j,   s_i = (x_{i+1} - x_i) / h.
// forcing may be empty (no load).
void galerkinApply(std::span<const double> x, std::span<const double> forcing, std::span<double> out);
void galerkinApplySerial(std::span<const double> x, std::span<const double> forcing,
                         std::span<double> out);

// Below this dimension galerkinApply runs single-threaded.
inline constexpr std::size_t kGalerkinParallelThreshold = 4096;

}  // namespace viproplab::kernels

#endif  // VIPROPLAB_KERNELS_HPP_
