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

#include "viproplab/gen.hpp"

#include <stdexcept>

namespace viproplab::gen {

PiecewiseLinearFn sawtooth(long k) {
  if (k < 1) throw std::invalid_argument("sawtooth: k must be >= 1");
  std::vector<Rational> breakpoints;
  std::vector<Rational> values;
  breakpoints.reserve(2 * k + 2);
  values.reserve(2 * k + 2);
  const Rational height(1, k);
  for (long i = 0; i < k; ++i) {
    breakpoints.emplace_back(i, 2 * k);
    values.emplace_back(0);
    breakpoints.emplace_back(3 * i + 1, 6 * k);
    values.push_back(height);
  }
  breakpoints.emplace_back(1, 2);
  values.emplace_back(0);
  breakpoints.emplace_back(1);
  values.emplace_back(0);
  for (auto& b : breakpoints) b.canonicalize();
  return {std::move(breakpoints), std::move(values)};
}

PiecewiseLinearFn scaledHat(const Rational& alpha) {
  if (alpha <= 0) throw std::invalid_argument("scaledHat: alpha must be positive");
  return {{Rational(0), Rational(1, 2), Rational(1)}, {Rational(0), Rational(alpha / 2), Rational(0)}};
}

Rational hatThreshold(long k) {
  // <F(u_k), u_k - v_alpha> = |u_k'|^3-integral - alpha * <F(u_k), v_1>.
  const auto u = sawtooth(k);
  const ExactReal norm = pwcalc::powNorm(pwcalc::derivative(u), 3);
  const ExactReal perUnitAlpha = pwcalc::pLaplacianPairing(u, scaledHat(Rational(1)));
  return (norm / perUnitAlpha).exact();
}

L2SeqVector::L2SeqVector(long index) : index_(index) {
  if (index < 1) throw std::invalid_argument("L2SeqVector: index must be >= 1");
}

L2FiniteVector::L2FiniteVector(std::map<long, Rational> coefficients) {
  for (auto& [index, c] : coefficients) {
    if (index < 1) throw std::invalid_argument("L2FiniteVector: index must be >= 1");
    if (c != 0) coefficients_.emplace(index, std::move(c));
  }
}

const Rational& L2FiniteVector::coefficient(long index) const {
  static const Rational kZero(0);
  auto it = coefficients_.find(index);
  return it == coefficients_.end() ? kZero : it->second;
}

ExactReal l2Pairing(const L2SeqVector& a, const L2SeqVector& b) {
  return ExactReal(a.index() == b.index() ? 1 : 0);
}

ExactReal l2Pairing(const L2SeqVector& a, const L2FiniteVector& y) {
  return ExactReal(y.coefficient(a.index()));
}

std::string_view kindName(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::kSawtooth:
      return "sawtooth";
    case SequenceKind::kScaledHat:
      return "hat";
    case SequenceKind::kL2UnitVector:
      return "l2unit";
  }
  return "unknown";
}

std::optional<SequenceKind> parseKind(std::string_view name) {
  for (auto kind : {SequenceKind::kSawtooth, SequenceKind::kScaledHat, SequenceKind::kL2UnitVector}) {
    if (kindName(kind) == name) return kind;
  }
  return std::nullopt;
}

SequenceSpec SequenceSpec::sawtooth() { return {SequenceKind::kSawtooth, {}}; }

SequenceSpec SequenceSpec::scaledHat(Rational alpha) {
  if (alpha <= 0) throw std::invalid_argument("scaledHat: alpha must be positive");
  return {SequenceKind::kScaledHat, {std::move(alpha)}};
}

SequenceSpec SequenceSpec::l2UnitVector() { return {SequenceKind::kL2UnitVector, {}}; }

PiecewiseLinearFn SequenceSpec::functionAt(long k) const {
  if (k < 1) throw std::invalid_argument("SequenceSpec: index must be >= 1");
  switch (kind_) {
    case SequenceKind::kSawtooth:
      return gen::sawtooth(k);
    case SequenceKind::kScaledHat:
      return gen::scaledHat(parameters_.at(0));
    case SequenceKind::kL2UnitVector:
      break;
  }
  throw std::logic_error("SequenceSpec: l2unit is not a function sequence");
}

L2SeqVector SequenceSpec::vectorAt(long k) const {
  if (kind_ != SequenceKind::kL2UnitVector) {
    throw std::logic_error("SequenceSpec: only l2unit yields l2 vectors");
  }
  return L2SeqVector(k);
}

}  // namespace viproplab::gen
