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

#include "viproplab/proplab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viproplab::proplab {

namespace {

void checkKMax(long kMax) {
  if (kMax < kMinKMax) {
    throw std::invalid_argument("kMax must be >= " + std::to_string(kMinKMax));
  }
}

FunctionSequence asFunctionSequence(const SequenceSpec& seq) {
  if (!seq.isFunctionSequence()) {
    throw std::invalid_argument("sequence kind '" + std::string(gen::kindName(seq.kind())) +
                                "' is not a function sequence");
  }
  return [seq](long k) { return seq.functionAt(k); };
}

std::pair<long, long> tailRange(const PairingSequenceReport& r) {
  const long last = r.indices.empty() ? 0 : r.indices.back();
  return {last - r.tailWindow + 1, last};
}

std::string windowText(const PairingSequenceReport& r) {
  const auto [a, b] = tailRange(r);
  return "[" + std::to_string(a) + "," + std::to_string(b) + "]";
}

Exactness exactnessOf(const ExactReal& x) {
  return x.isExact() ? Exactness::kExact : Exactness::kApproximate;
}

Certificate inconclusive(Property p, const PairingSequenceReport& r, const std::string& what) {
  Certificate c{p, Verdict::kInconclusive, {}, Exactness::kExact, {}};
  c.witness.kWindow = tailRange(r);
  c.note = "limit of " + what + " not determined: tail over k in " + windowText(r) +
           " is neither exactly constant nor Cauchy to 1e-12";
  return c;
}

Certificate premiseFromReport(const PairingSequenceReport& r, nlohmann::json limitJson) {
  const Property p = Property::kPseudomonotonePremiseFails;
  if (!r.limitCandidate) return inconclusive(p, r, "<F(x_k), x_k - x>");
  const ExactReal& tail = *r.limitCandidate;
  Certificate c{p, tail > ExactReal(0) ? Verdict::kEstablished : Verdict::kRefuted, {},
                exactnessOf(tail), {}};
  c.witness.direction = std::move(limitJson);
  c.witness.margin = tail;
  c.witness.tailConstant = tail;
  c.witness.kWindow = tailRange(r);
  c.note = c.verdict == Verdict::kEstablished
               ? "limsup <F(x_k), x_k - x> = " + tail.toString() +
                     " > 0: the pseudomonotonicity premise fails, nothing is imposed on this sequence"
               : "limsup <F(x_k), x_k - x> = " + tail.toString() +
                     " <= 0: the premise holds along this sequence";
  return c;
}

}  // namespace

PairingSequenceReport summarizeSequence(std::vector<ExactReal> values, long tailWindow) {
  PairingSequenceReport r;
  const long n = static_cast<long>(values.size());
  r.tailWindow = std::clamp(tailWindow, n > 0 ? 1L : 0L, n);
  r.indices.reserve(values.size());
  for (long k = 1; k <= n; ++k) r.indices.push_back(k);
  r.values = std::move(values);
  if (n == 0) return r;

  const auto first = r.values.begin() + (n - r.tailWindow);
  bool allExact = true;
  for (auto it = first; it != r.values.end(); ++it) allExact = allExact && it->isExact();

  if (allExact) {
    bool constant = true;
    for (auto it = first; it != r.values.end(); ++it) constant = constant && (*it == *first);
    if (constant) {
      r.limitCandidate = *first;
      r.detection = LimitDetection::kEventuallyConstant;
    }
    return r;
  }
  bool cauchy = true;
  for (auto it = first + 1; it != r.values.end(); ++it) {
    cauchy = cauchy && std::fabs(it->toDouble() - (it - 1)->toDouble()) < kCauchyTolerance;
  }
  if (cauchy) {
    r.limitCandidate = ExactReal::approximate(r.values.back().toDouble());
    r.detection = LimitDetection::kCauchyTail;
  }
  return r;
}

ExactReal equilibriumGap(const PiecewiseLinearFn& x, const PiecewiseLinearFn& y) {
  return pwcalc::pLaplacianPairing(x, pwcalc::linComb(1, x, -1, y));
}

PairingSequenceReport pairingSequence(const FunctionSequence& seq, const PiecewiseLinearFn& y,
                                      long kMax) {
  checkKMax(kMax);
  return summarizeSequence(kernels::pairingSweep(seq, y, kMax), kMax / 2);
}

PairingSequenceReport pairingSequence(const SequenceSpec& seq, const PiecewiseLinearFn& y, long kMax) {
  return pairingSequence(asFunctionSequence(seq), y, kMax);
}

PairingSequenceReport pairingSequence(const SequenceSpec& seq, const gen::L2FiniteVector& y,
                                      long kMax) {
  checkKMax(kMax);
  std::vector<ExactReal> values;
  values.reserve(static_cast<std::size_t>(kMax));
  for (long k = 1; k <= kMax; ++k) {
    const auto ek = seq.vectorAt(k);
    values.push_back(gen::l2Pairing(ek, ek) - gen::l2Pairing(ek, y));
  }
  return summarizeSequence(std::move(values), kMax / 2);
}

std::string_view propertyName(Property p) {
  switch (p) {
    case Property::kKyFanViolation:
      return "kyFanViolation";
    case Property::kPseudomonotonePremiseFails:
      return "pseudomonotonePremiseFails";
    case Property::kMonotoneGapNonneg:
      return "monotoneGapNonneg";
    case Property::kBoundedHolder:
      return "boundedHolder";
    case Property::kRemark32:
      return "remark32";
  }
  return "unknown";
}

std::string_view verdictName(Verdict v) {
  switch (v) {
    case Verdict::kEstablished:
      return "established";
    case Verdict::kRefuted:
      return "refuted";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::string_view exactnessName(Exactness e) { return e == Exactness::kExact ? "exact" : "approximate"; }

Certificate kyFanViolationCertificate(const FunctionSequence& seq, const PiecewiseLinearFn& limit,
                                      const PiecewiseLinearFn& y, long kMax) {
  const auto report = pairingSequence(seq, y, kMax);
  const Property p = Property::kKyFanViolation;
  if (!report.limitCandidate) return inconclusive(p, report, "<F(x_k), x_k - y>");
  const ExactReal& tail = *report.limitCandidate;
  const ExactReal atLimit = equilibriumGap(limit, y);
  const ExactReal margin = atLimit - tail;
  Certificate c{p, margin > ExactReal(0) ? Verdict::kEstablished : Verdict::kRefuted, {},
                exactnessOf(margin), {}};
  c.witness.direction = pwcalc::toJson(y);
  c.witness.margin = margin;
  c.witness.tailConstant = tail;
  c.witness.kWindow = tailRange(report);
  c.note = "Psi(x, y) = " + atLimit.toString() + ", lim Psi(x_k, y) = " + tail.toString() +
           (c.verdict == Verdict::kEstablished
                ? ": x -> <F(x), x - y> is not weakly sequentially lsc along this sequence"
                : ": no violation along this direction");
  return c;
}

Certificate kyFanViolationCertificate(const SequenceSpec& seq, const PiecewiseLinearFn& limit,
                                      const PiecewiseLinearFn& y, long kMax) {
  return kyFanViolationCertificate(asFunctionSequence(seq), limit, y, kMax);
}

Certificate pseudomonotonePremiseAudit(const FunctionSequence& seq, const PiecewiseLinearFn& limit,
                                       long kMax) {
  return premiseFromReport(pairingSequence(seq, limit, kMax), pwcalc::toJson(limit));
}

Certificate pseudomonotonePremiseAudit(const SequenceSpec& seq, const PiecewiseLinearFn& limit,
                                       long kMax) {
  return pseudomonotonePremiseAudit(asFunctionSequence(seq), limit, kMax);
}

Certificate pseudomonotonePremiseAudit(const SequenceSpec& seq, const gen::L2FiniteVector& limit,
                                       long kMax) {
  nlohmann::json support = nlohmann::json::object();
  for (const auto& [index, c] : limit.coefficients()) support[std::to_string(index)] = rationalToJson(c);
  return premiseFromReport(pairingSequence(seq, limit, kMax), nlohmann::json{{"l2", support}});
}

ExactReal monotoneGapCheck(const PiecewiseLinearFn& u, const PiecewiseLinearFn& w) {
  const auto diff = pwcalc::linComb(1, u, -1, w);
  return pwcalc::pLaplacianPairing(u, diff) - pwcalc::pLaplacianPairing(w, diff);
}

Certificate monotoneGapCertificate(const PiecewiseLinearFn& u, const PiecewiseLinearFn& w) {
  const ExactReal gap = monotoneGapCheck(u, w);
  Certificate c{Property::kMonotoneGapNonneg,
                gap >= ExactReal(0) ? Verdict::kEstablished : Verdict::kRefuted, {}, exactnessOf(gap),
                "<F(u) - F(w), u - w> = " + gap.toString()};
  c.witness.direction = pwcalc::toJson(w);
  c.witness.margin = gap;
  return c;
}

Certificate holderBoundednessCheck(const PiecewiseLinearFn& u, const PiecewiseLinearFn& w) {
  const double lhs = pwcalc::pLaplacianPairing(u, w).abs().toDouble();
  const ExactReal a = pwcalc::powNorm(pwcalc::derivative(u), 3);
  const ExactReal b = pwcalc::powNorm(pwcalc::derivative(w), 3);
  // ||u'||_3^2 ||w'||_3 = cbrt(A^2 B) with A, B the cubed norms.
  const double rhs = root(a * a * b, 3).toDouble();
  const bool holds = lhs <= rhs * (1 + kHolderRelativeTolerance);
  Certificate c{Property::kBoundedHolder, holds ? Verdict::kEstablished : Verdict::kRefuted, {},
                Exactness::kApproximate, {}};
  c.witness.direction = pwcalc::toJson(w);
  c.witness.margin = ExactReal::approximate(rhs - lhs);
  c.note = "|<F(u), w>| = " + ExactReal::approximate(lhs).toString() +
           ", ||u'||^2 ||w'|| = " + ExactReal::approximate(rhs).toString();
  return c;
}

Certificate remark32Certificate(long kMax) {
  const auto report = pairingSequence(SequenceSpec::l2UnitVector(), gen::L2FiniteVector{}, kMax);
  const Property p = Property::kRemark32;
  if (!report.limitCandidate) return inconclusive(p, report, "<e_k, e_k - 0>");
  const ExactReal& tail = *report.limitCandidate;
  const bool nonzero = tail.isExact() && tail != ExactReal(0);
  Certificate c{p, nonzero ? Verdict::kEstablished : Verdict::kRefuted, {}, exactnessOf(tail), {}};
  c.witness.direction = nlohmann::json{{"l2", nlohmann::json::object()}};
  c.witness.margin = tail;
  c.witness.tailConstant = tail;
  c.witness.kWindow = tailRange(report);
  c.note = nonzero ? "<F(e_k), e_k - 0> is convergent with limit " + tail.toString() + ", limit not zero"
                   : "limit is zero";
  return c;
}

std::vector<TestFunction> standardTestFamily(int maxDegree, int maxLevel) {
  std::vector<TestFunction> family;
  for (int d = 0; d <= maxDegree; ++d) family.push_back(TestFunction::monomial(d));
  for (int level = 0; level <= maxLevel; ++level) {
    for (long j = 0; j < (1L << level); ++j) family.push_back(TestFunction::dyadic(level, j));
  }
  return family;
}

WeakEvidenceReport weakConvergenceEvidence(const SequenceSpec& seq,
                                           const std::vector<TestFunction>& family, long kMax) {
  if (family.empty()) throw std::invalid_argument("weakConvergenceEvidence: empty test family");
  if (kMax < 2) throw std::invalid_argument("weakConvergenceEvidence: kMax must be >= 2");
  const auto fseq = asFunctionSequence(seq);
  WeakEvidenceReport report;
  report.kMax = kMax;
  report.consistent = true;
  for (const auto& phi : family) {
    TestIntegralSeries s;
    s.label = phi.label();
    s.integrals = kernels::testIntegralSweep(fseq, phi, kMax);
    s.allZero = true;
    for (long k = 1; k <= kMax; ++k) {
      const Rational& v = s.integrals[static_cast<std::size_t>(k - 1)];
      const Rational scaled = abs(v) * k;
      Rational& peak = (k <= kMax / 2) ? s.headPeak : s.tailPeak;
      if (scaled > peak) peak = scaled;
      s.allZero = s.allZero && v == 0;
    }
    s.decayConstant = std::max(s.headPeak, s.tailPeak);
    s.consistent = s.tailPeak <= s.headPeak * kDecayGrowthFactor;
    report.consistent = report.consistent && s.consistent;
    report.series.push_back(std::move(s));
  }
  return report;
}

namespace {

nlohmann::json optionalReal(const std::optional<ExactReal>& x) {
  return x ? toJson(*x) : nlohmann::json(nullptr);
}

std::string_view detectionName(LimitDetection d) {
  switch (d) {
    case LimitDetection::kEventuallyConstant:
      return "eventually-constant";
    case LimitDetection::kCauchyTail:
      return "Cauchy-tail";
    case LimitDetection::kNone:
      return "none";
  }
  return "none";
}

}  // namespace

nlohmann::json toJson(const Certificate& c) {
  nlohmann::json w;
  w["y"] = c.witness.direction ? *c.witness.direction : nlohmann::json(nullptr);
  w["margin"] = optionalReal(c.witness.margin);
  w["tail_constant"] = optionalReal(c.witness.tailConstant);
  w["k_window"] = c.witness.kWindow
                      ? nlohmann::json::array({c.witness.kWindow->first, c.witness.kWindow->second})
                      : nlohmann::json(nullptr);
  return {{"property", propertyName(c.property)},
          {"verdict", verdictName(c.verdict)},
          {"witness", w},
          {"exactness", exactnessName(c.exactness)},
          {"note", c.note}};
}

nlohmann::json toJson(const PairingSequenceReport& r) {
  auto values = nlohmann::json::array();
  for (const auto& v : r.values) values.push_back(toJson(v));
  return {{"indices", r.indices},
          {"values", values},
          {"limit_candidate", optionalReal(r.limitCandidate)},
          {"detection", detectionName(r.detection)},
          {"tail_window", r.tailWindow}};
}

nlohmann::json toJson(const WeakEvidenceReport& r) {
  auto series = nlohmann::json::array();
  for (const auto& s : r.series) {
    auto integrals = nlohmann::json::array();
    for (const auto& v : s.integrals) integrals.push_back(rationalToJson(v));
    series.push_back({{"phi", s.label},
                      {"integrals", integrals},
                      {"decay_constant", rationalToJson(s.decayConstant)},
                      {"head_peak", rationalToJson(s.headPeak)},
                      {"tail_peak", rationalToJson(s.tailPeak)},
                      {"all_zero", s.allZero},
                      {"consistent", s.consistent}});
  }
  return {{"kmax", r.kMax},
          {"kind", "EVIDENCE, not proof"},
          {"verdict", r.consistent ? "consistent with weak null convergence"
                                   : "not consistent with weak null convergence"},
          {"series", series}};
}

}  // namespace viproplab::proplab
