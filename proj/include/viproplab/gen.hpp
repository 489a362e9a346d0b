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

#ifndef VIPROPLAB_GEN_HPP_
#define VIPROPLAB_GEN_HPP_

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "viproplab/exact_real.hpp"
#include "viproplab/pwcalc.hpp"

// Function families for the sawtooth counterexample and the l2 unit-vector
// sequence.
namespace viproplab::gen {

using pwcalc::PiecewiseLinearFn;

// The k-th sawtooth: peaks of height 1/k at (3i+1)/(6k), zeros at i/(2k),
// identically zero on [1/2, 1]. Throws std::invalid_argument for k < 1.
PiecewiseLinearFn sawtooth(long k);

// alpha * min{t, 1 - t}. Throws std::invalid_argument for alpha <= 0.
PiecewiseLinearFn scaledHat(const Rational& alpha);

// Smallest alpha for which <F(u_k), u_k - v_alpha> turns negative, computed
// from the exact pairings of sawtooth(k) rather than taken as a constant.
Rational hatThreshold(long k = 1);

// k-th standard unit vector of l2, kept symbolic.
class L2SeqVector {
 public:
  explicit L2SeqVector(long index);
  long index() const { return index_; }

 private:
  long index_;
};

// Finitely supported l2 element (index -> coefficient). Zero by default.
class L2FiniteVector {
 public:
  L2FiniteVector() = default;
  explicit L2FiniteVector(std::map<long, Rational> coefficients);

  const Rational& coefficient(long index) const;
  const std::map<long, Rational>& coefficients() const { return coefficients_; }

 private:
  std::map<long, Rational> coefficients_;
};

// <a, b> with F = identity: 1 if the indices coincide, else 0.
ExactReal l2Pairing(const L2SeqVector& a, const L2SeqVector& b);

// <e_k, y>
ExactReal l2Pairing(const L2SeqVector& a, const L2FiniteVector& y);

enum class SequenceKind { kSawtooth, kScaledHat, kL2UnitVector };

// CLI names: "sawtooth", "hat", "l2unit".
std::string_view kindName(SequenceKind kind);
std::optional<SequenceKind> parseKind(std::string_view name);

// A symbolic sequence {x_k}_{k>=1}. Deterministic: the same k always gives an
// identical object. A scaledHat sequence is the constant sequence v_alpha.
class SequenceSpec {
 public:
  static SequenceSpec sawtooth();
  static SequenceSpec scaledHat(Rational alpha);
  static SequenceSpec l2UnitVector();

  SequenceKind kind() const { return kind_; }
  const std::vector<Rational>& parameters() const { return parameters_; }
  bool isFunctionSequence() const { return kind_ != SequenceKind::kL2UnitVector; }

  // Throws std::logic_error for the wrong kind, std::invalid_argument for k < 1.
  PiecewiseLinearFn functionAt(long k) const;
  L2SeqVector vectorAt(long k) const;

 private:
  SequenceSpec(SequenceKind kind, std::vector<Rational> parameters)
      : kind_(kind), parameters_(std::move(parameters)) {}

  SequenceKind kind_;
  std::vector<Rational> parameters_;
};

}  // namespace viproplab::gen

#endif  // VIPROPLAB_GEN_HPP_
