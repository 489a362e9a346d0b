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

#ifndef VIPROPLAB_PROPLAB_HPP_
#define VIPROPLAB_PROPLAB_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "viproplab/exact_real.hpp"
#include "viproplab/gen.hpp"
#include "viproplab/kernels.hpp"
#include "viproplab/pwcalc.hpp"

// Executable certificates for operator properties of the p = 3 Laplacian
// F: W_0^{1,3}(0,1) -> dual, evaluated along explicit sequences.
//
// Limits of infinite sequences are not computable. A sequence of pairing
// values is assigned a limit only when its tail window is exactly constant
// (exact values) or Cauchy to 1e-12 (approximate values). Everything else is
// reported as inconclusive. Nothing here proves a universally quantified
// property; certificates witness behaviour along the given data only.
namespace viproplab::proplab {

using gen::SequenceSpec;
using kernels::FunctionSequence;
using pwcalc::PiecewiseLinearFn;
using pwcalc::TestFunction;

inline constexpr long kDefaultKMax = 64;
inline constexpr long kMinKMax = 8;
inline constexpr double kCauchyTolerance = 1e-12;
inline constexpr double kHolderRelativeTolerance = 1e-9;

enum class LimitDetection { kEventuallyConstant, kCauchyTail, kNone };

struct PairingSequenceReport {
  std::vector<long> indices;
  std::vector<ExactReal> values;
  std::optional<ExactReal> limitCandidate;
  LimitDetection detection = LimitDetection::kNone;
  long tailWindow = 0;
};

// Detects a limit in values (index k = position + 1) using the last
// tailWindow entries.
PairingSequenceReport summarizeSequence(std::vector<ExactReal> values, long tailWindow);

// Psi(x, y) = <F(x), x - y>.
ExactReal equilibriumGap(const PiecewiseLinearFn& x, const PiecewiseLinearFn& y);

// <F(x_k), x_k - y> for k = 1..kMax, tail window kMax / 2. Throws
// std::invalid_argument if kMax < 8.
PairingSequenceReport pairingSequence(const SequenceSpec& seq, const PiecewiseLinearFn& y, long kMax);
PairingSequenceReport pairingSequence(const FunctionSequence& seq, const PiecewiseLinearFn& y,
                                      long kMax);
// l2 setting with F = identity: <e_k, e_k - y> = 1 - y_k.
PairingSequenceReport pairingSequence(const SequenceSpec& seq, const gen::L2FiniteVector& y,
                                      long kMax);

enum class Property {
  kKyFanViolation,
  kPseudomonotonePremiseFails,
  kMonotoneGapNonneg,
  kBoundedHolder,
  kRemark32,
};
enum class Verdict { kEstablished, kRefuted, kInconclusive };
enum class Exactness { kExact, kApproximate };

std::string_view propertyName(Property p);
std::string_view verdictName(Verdict v);
std::string_view exactnessName(Exactness e);

struct Witness {
  std::optional<nlohmann::json> direction;  // serialized y
  std::optional<ExactReal> margin;
  std::optional<ExactReal> tailConstant;
  std::optional<std::pair<long, long>> kWindow;

  bool empty() const { return !direction && !margin && !tailConstant && !kWindow; }
};

struct Certificate {
  Property property;
  Verdict verdict;
  Witness witness;
  Exactness exactness;
  // Why the verdict was reached; for inconclusive certificates names the
  // limit that could not be determined.
  std::string note;
};

// Violation of weak sequential lower semicontinuity of x -> <F(x), x - y>
// along seq, given its asserted weak limit. Established iff the detected
// tail limit L satisfies Psi(limit, y) > L; the witness margin is
// Psi(limit, y) - L.
Certificate kyFanViolationCertificate(const SequenceSpec& seq, const PiecewiseLinearFn& limit,
                                      const PiecewiseLinearFn& y, long kMax);
Certificate kyFanViolationCertificate(const FunctionSequence& seq, const PiecewiseLinearFn& limit,
                                      const PiecewiseLinearFn& y, long kMax);

// Audits the limsup premise <F(x_k), x_k - x> -> L <= 0 of pseudomonotonicity.
// Established (premise fails) iff the tail constant L is > 0; refuted iff
// L <= 0 (premise holds, so the conclusion is binding on this sequence).
Certificate pseudomonotonePremiseAudit(const SequenceSpec& seq, const PiecewiseLinearFn& limit,
                                       long kMax);
Certificate pseudomonotonePremiseAudit(const FunctionSequence& seq, const PiecewiseLinearFn& limit,
                                       long kMax);
Certificate pseudomonotonePremiseAudit(const SequenceSpec& seq, const gen::L2FiniteVector& limit,
                                       long kMax);

// <F(u) - F(w), u - w>, exact. Nonnegative for every pair.
ExactReal monotoneGapCheck(const PiecewiseLinearFn& u, const PiecewiseLinearFn& w);
Certificate monotoneGapCertificate(const PiecewiseLinearFn& u, const PiecewiseLinearFn& w);

// |<F(u), w>| <= ||u'||_3^2 ||w'||_3 within relative tolerance 1e-9. A
// refuted certificate means an implementation bug.
Certificate holderBoundednessCheck(const PiecewiseLinearFn& u, const PiecewiseLinearFn& w);

// The l2 identity-operator sequence <e_k, e_k - 0> = 1: convergent with a
// nonzero limit. Established iff the tail constant is exactly detected and
// differs from zero.
Certificate remark32Certificate(long kMax);

struct TestIntegralSeries {
  std::string label;
  std::vector<Rational> integrals;  // k = 1..kMax
  Rational decayConstant;           // max_k k * |integral_k|
  Rational headPeak;                // max over k <= kMax/2 of k * |integral_k|
  Rational tailPeak;                // max over k > kMax/2
  bool allZero = false;
  bool consistent = false;
};

// Evidence, not proof, that x_k' converges weakly to zero: for each test
// function the exact integrals of x_k' * phi, the decay constant C with
// |integral_k| <= C/k on the sweep, and a growth check requiring the
// scaled magnitude k*|integral_k| over the second half of the sweep to stay
// within a factor 9/8 of its first-half peak.
struct WeakEvidenceReport {
  long kMax = 0;
  std::vector<TestIntegralSeries> series;
  bool consistent = false;  // "consistent with weak null convergence"
};

// Allowed ratio tailPeak / headPeak.
inline const Rational kDecayGrowthFactor{9, 8};

// Throws std::invalid_argument for an empty family, kMax < 2 or an l2 sequence.
WeakEvidenceReport weakConvergenceEvidence(const SequenceSpec& seq,
                                           const std::vector<TestFunction>& family, long kMax);

// Monomials t^0..t^maxDegree followed by all dyadic indicators of level
// 0..maxLevel.
std::vector<TestFunction> standardTestFamily(int maxDegree = 5, int maxLevel = 6);

nlohmann::json toJson(const Certificate& c);
nlohmann::json toJson(const PairingSequenceReport& r);
nlohmann::json toJson(const WeakEvidenceReport& r);

}  // namespace viproplab::proplab

#endif  // VIPROPLAB_PROPLAB_HPP_
