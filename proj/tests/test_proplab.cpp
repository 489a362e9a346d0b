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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "test_support.hpp"

namespace viproplab::proplab {
namespace {

using gen::sawtooth;
using gen::scaledHat;
using pwcalc::PiecewiseLinearFn;

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

const PiecewiseLinearFn kZero = PiecewiseLinearFn::zero();

TEST(EquilibriumGapTest, Cases) {
  std::mt19937_64 rng(testing::sweepSeed() + 20);
  for (int i = 0; i < 20; ++i) {
    const auto y = testing::randomPiecewiseLinear(rng);
    EXPECT_EQ(equilibriumGap(kZero, y).exact(), 0);
    EXPECT_EQ(equilibriumGap(y, y).exact(), 0);
  }
  for (long k : {1, 5, 64}) {
    for (long alpha : {16, 20, 100}) {
      EXPECT_EQ(equilibriumGap(sawtooth(k), scaledHat(q(alpha))).exact(), 45 - 3 * alpha);
    }
  }
}

TEST(PairingSequenceTest, SawtoothAgainstHatSixteen) {
  const auto r = pairingSequence(SequenceSpec::sawtooth(), scaledHat(q(16)), 64);
  ASSERT_EQ(r.values.size(), 64u);
  EXPECT_EQ(r.indices.front(), 1);
  EXPECT_EQ(r.indices.back(), 64);
  for (const auto& v : r.values) EXPECT_EQ(v.exact(), -3);
  ASSERT_TRUE(r.limitCandidate.has_value());
  EXPECT_EQ(r.limitCandidate->exact(), -3);
  EXPECT_EQ(r.detection, LimitDetection::kEventuallyConstant);
  EXPECT_EQ(r.tailWindow, 32);
}

TEST(PairingSequenceTest, SawtoothAgainstZero) {
  const auto r = pairingSequence(SequenceSpec::sawtooth(), kZero, 64);
  for (const auto& v : r.values) EXPECT_EQ(v.exact(), 45);
  EXPECT_EQ(r.limitCandidate->exact(), 45);
}

TEST(PairingSequenceTest, RejectsShortWindowsAndL2ForFunctions) {
  EXPECT_THROW(pairingSequence(SequenceSpec::sawtooth(), kZero, 7), std::invalid_argument);
  EXPECT_THROW(pairingSequence(SequenceSpec::l2UnitVector(), kZero, 16), std::invalid_argument);
}

TEST(SummarizeSequenceTest, DetectionRules) {
  // Exact, constant only from k = 3 on; window 4 of 6 sees it.
  std::vector<ExactReal> v{ExactReal(5), ExactReal(4), ExactReal(2), ExactReal(2), ExactReal(2), ExactReal(2)};
  auto r = summarizeSequence(v, 4);
  EXPECT_EQ(r.detection, LimitDetection::kEventuallyConstant);
  EXPECT_EQ(r.limitCandidate->exact(), 2);
  r = summarizeSequence(v, 5);
  EXPECT_EQ(r.detection, LimitDetection::kNone);
  EXPECT_FALSE(r.limitCandidate.has_value());

  // Exact values never use the Cauchy heuristic.
  std::vector<ExactReal> slow;
  for (long k = 1; k <= 16; ++k) slow.emplace_back(Rational(1, k * k * k * k * k * k * k * k + 1));
  EXPECT_EQ(summarizeSequence(slow, 8).detection, LimitDetection::kNone);

  std::vector<ExactReal> approx;
  for (long k = 1; k <= 16; ++k) approx.push_back(ExactReal::approximate(k > 8 ? 1.0 + 1e-15 : 1.0 + 1e-3 / static_cast<double>(k)));
  r = summarizeSequence(approx, 8);
  EXPECT_EQ(r.detection, LimitDetection::kCauchyTail);
  EXPECT_FALSE(r.limitCandidate->isExact());
  EXPECT_NEAR(r.limitCandidate->toDouble(), 1.0, 1e-14);

  std::vector<ExactReal> jumpy;
  for (long k = 1; k <= 16; ++k) jumpy.push_back(ExactReal::approximate(k % 2 ? 1.0 : 1.0 + 1e-9));
  EXPECT_EQ(summarizeSequence(jumpy, 8).detection, LimitDetection::kNone);
}

TEST(KyFanCertificateTest, EstablishedForAlphaSixteen) {
  const auto c = kyFanViolationCertificate(SequenceSpec::sawtooth(), kZero, scaledHat(q(16)), 64);
  EXPECT_EQ(c.property, Property::kKyFanViolation);
  EXPECT_EQ(c.verdict, Verdict::kEstablished);
  EXPECT_EQ(c.exactness, Exactness::kExact);
  EXPECT_EQ(c.witness.margin->exact(), 3);
  EXPECT_EQ(c.witness.tailConstant->exact(), -3);
  EXPECT_EQ(c.witness.kWindow, std::make_pair(33L, 64L));
  EXPECT_EQ(pwcalc::linearFromJson(*c.witness.direction), scaledHat(q(16)));
}

TEST(KyFanCertificateTest, RefutedDirections) {
  const auto seq = SequenceSpec::sawtooth();
  const auto zeroDir = kyFanViolationCertificate(seq, kZero, kZero, 64);
  EXPECT_EQ(zeroDir.verdict, Verdict::kRefuted);
  EXPECT_EQ(zeroDir.witness.margin->exact(), -45);

  const auto ten = kyFanViolationCertificate(seq, kZero, scaledHat(q(10)), 64);
  EXPECT_EQ(ten.verdict, Verdict::kRefuted);
  EXPECT_EQ(ten.witness.tailConstant->exact(), 15);

  const auto boundary = kyFanViolationCertificate(seq, kZero, scaledHat(q(15)), 64);
  EXPECT_EQ(boundary.verdict, Verdict::kRefuted);
  EXPECT_EQ(boundary.witness.margin->exact(), 0);

  const auto justAbove = kyFanViolationCertificate(seq, kZero, scaledHat(q(151, 10)), 64);
  EXPECT_EQ(justAbove.verdict, Verdict::kEstablished);
  EXPECT_EQ(justAbove.witness.margin->exact(), q(3, 10));
}

TEST(KyFanCertificateTest, InconclusiveWithoutTailPattern) {
  // (1 + 1/k) u_k: pairing values 45 (1 + 1/k)^3 - ..., never constant.
  const FunctionSequence seq = [](long k) {
    return pwcalc::linComb(Rational(k + 1, k), sawtooth(k), 0, PiecewiseLinearFn::zero());
  };
  const auto c = kyFanViolationCertificate(seq, kZero, scaledHat(q(16)), 16);
  EXPECT_EQ(c.verdict, Verdict::kInconclusive);
  EXPECT_FALSE(c.witness.margin.has_value());
  EXPECT_NE(c.note.find("not determined"), std::string::npos);
  EXPECT_EQ(pseudomonotonePremiseAudit(seq, kZero, 16).verdict, Verdict::kInconclusive);
}

TEST(PremiseAuditTest, Cases) {
  const auto saw = pseudomonotonePremiseAudit(SequenceSpec::sawtooth(), kZero, 64);
  EXPECT_EQ(saw.verdict, Verdict::kEstablished);
  EXPECT_EQ(saw.witness.tailConstant->exact(), 45);
  EXPECT_EQ(saw.witness.margin->exact(), 45);

  const auto w = scaledHat(q(3));
  const auto constant = pseudomonotonePremiseAudit(SequenceSpec::scaledHat(q(3)), w, 16);
  EXPECT_EQ(constant.verdict, Verdict::kRefuted);
  EXPECT_EQ(constant.witness.tailConstant->exact(), 0);

  const auto l2 = pseudomonotonePremiseAudit(SequenceSpec::l2UnitVector(), gen::L2FiniteVector{}, 100);
  EXPECT_EQ(l2.verdict, Verdict::kEstablished);
  EXPECT_EQ(l2.witness.tailConstant->exact(), 1);
}

TEST(MonotoneGapTest, ScalarInequalityBruteForce) {
  // Pointwise fact behind the operator monotonicity: (|a|a - |b|b)(a - b) >= 0.
  for (long i = -40; i <= 40; ++i) {
    for (long j = -40; j <= 40; ++j) {
      const Rational a(i, 7);
      const Rational b(j, 5);
      EXPECT_GE((abs(a) * a - abs(b) * b) * (a - b), 0);
    }
  }
}

TEST(MonotoneGapTest, Cases) {
  std::mt19937_64 rng(testing::sweepSeed() + 21);
  const auto u = testing::randomPiecewiseLinear(rng);
  EXPECT_EQ(monotoneGapCheck(u, u).exact(), 0);
  EXPECT_EQ(monotoneGapCheck(sawtooth(2), kZero).exact(), 45);
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::randomPiecewiseLinear(rng);
    const auto b = testing::randomPiecewiseLinear(rng);
    const ExactReal gap = monotoneGapCheck(a, b);
    ASSERT_TRUE(gap.isExact());
    EXPECT_GE(gap.exact(), 0);
    // Same quantity summed directly over the merged grid.
    const auto [da, db] = pwcalc::commonRefinement(pwcalc::derivative(a), pwcalc::derivative(b));
    Rational sum = 0;
    for (std::size_t p = 0; p < da.pieces(); ++p) {
      const Rational& c = da.intervalValues()[p];
      const Rational& d = db.intervalValues()[p];
      sum += (abs(c) * c - abs(d) * d) * (c - d) * da.length(p);
    }
    EXPECT_EQ(gap.exact(), sum);
  }
  EXPECT_EQ(monotoneGapCertificate(sawtooth(2), kZero).verdict, Verdict::kEstablished);
}

TEST(HolderTest, Cases) {
  const auto zero = holderBoundednessCheck(kZero, sawtooth(2));
  EXPECT_EQ(zero.verdict, Verdict::kEstablished);
  EXPECT_EQ(zero.exactness, Exactness::kApproximate);
  EXPECT_EQ(zero.witness.margin->toDouble(), 0.0);

  const auto equal = holderBoundednessCheck(sawtooth(3), sawtooth(3));
  EXPECT_EQ(equal.verdict, Verdict::kEstablished);
  EXPECT_NEAR(equal.witness.margin->toDouble(), 0.0, 1e-12);

  std::mt19937_64 rng(testing::sweepSeed() + 22);
  for (int i = 0; i < 200; ++i) {
    const auto u = testing::randomPiecewiseLinear(rng);
    const auto w = testing::randomPiecewiseLinear(rng);
    EXPECT_EQ(holderBoundednessCheck(u, w).verdict, Verdict::kEstablished);
  }
}

TEST(Remark32Test, LimitIsOneNotZero) {
  const auto c = remark32Certificate(100);
  EXPECT_EQ(c.verdict, Verdict::kEstablished);
  EXPECT_EQ(c.witness.tailConstant->exact(), 1);
  EXPECT_NE(c.note.find("limit not zero"), std::string::npos);
}

TEST(WeakEvidenceTest, ZeroIntegralsAndDecay) {
  const std::vector<pwcalc::TestFunction> family{
      pwcalc::TestFunction::monomial(0), pwcalc::TestFunction::indicator(q(1, 2), q(1)),
      pwcalc::TestFunction::monomial(1)};
  const auto r = weakConvergenceEvidence(SequenceSpec::sawtooth(), family, 64);
  ASSERT_EQ(r.series.size(), 3u);
  EXPECT_TRUE(r.series[0].allZero);
  EXPECT_TRUE(r.series[1].allZero);
  EXPECT_FALSE(r.series[2].allZero);
  // Oracle for t: -integral of u_k = -k triangles of area 1/(4k^2).
  for (long k = 1; k <= 64; ++k) EXPECT_EQ(r.series[2].integrals[static_cast<std::size_t>(k - 1)], q(-1, 4 * k));
  EXPECT_EQ(r.series[2].decayConstant, q(1, 4));
  EXPECT_TRUE(r.consistent);
}

TEST(WeakEvidenceTest, ConstantSequenceIsFlagged) {
  const auto r = weakConvergenceEvidence(SequenceSpec::scaledHat(q(1)), {pwcalc::TestFunction::monomial(1)}, 64);
  EXPECT_FALSE(r.consistent);
  EXPECT_EQ(toJson(r)["verdict"], "not consistent with weak null convergence");
}

TEST(WeakEvidenceTest, RejectsBadInput) {
  EXPECT_THROW(weakConvergenceEvidence(SequenceSpec::sawtooth(), {}, 64), std::invalid_argument);
  EXPECT_THROW(weakConvergenceEvidence(SequenceSpec::l2UnitVector(), standardTestFamily(), 64),
               std::invalid_argument);
  EXPECT_EQ(standardTestFamily().size(), 6u + 127u);
}

// Sequences that genuinely converge weakly to their stated limit: either
// eventually equal to it, or limit + c * u_k with limit supported on [1/2, 1]
// where every u_k' vanishes.
TEST(ConsistencyProperty, KyFanAtLimitNeverEstablishedWhenPremiseHolds) {
  std::mt19937_64 rng(testing::sweepSeed() + 23);
  int premiseHeld = 0;
  int premiseFailed = 0;
  for (int trial = 0; trial < 40; ++trial) {
    FunctionSequence seq;
    PiecewiseLinearFn limit = PiecewiseLinearFn::zero();
    if (trial % 2 == 0) {
      limit = testing::randomPiecewiseLinear(rng);
      std::vector<PiecewiseLinearFn> head;
      for (int i = 0; i < 5; ++i) head.push_back(testing::randomPiecewiseLinear(rng));
      seq = [head, limit](long k) { return k <= 5 ? head[static_cast<std::size_t>(k - 1)] : limit; };
    } else {
      const auto raw = testing::randomPiecewiseLinear(rng, 5);
      // Squeeze raw onto [1/2, 1].
      std::vector<Rational> b{Rational(0)};
      std::vector<Rational> v{Rational(0)};
      for (std::size_t i = 0; i < raw.breakpoints().size(); ++i) {
        b.push_back((1 + raw.breakpoints()[i]) / 2);
        v.push_back(raw.values()[i]);
      }
      limit = PiecewiseLinearFn(std::move(b), std::move(v));
      const Rational c = testing::randomRational(rng, 5, 3);
      seq = [limit, c](long k) { return pwcalc::linComb(1, limit, c, sawtooth(k)); };
    }
    const auto premise = pseudomonotonePremiseAudit(seq, limit, 16);
    const auto kyFan = kyFanViolationCertificate(seq, limit, limit, 16);
    ASSERT_NE(premise.verdict, Verdict::kInconclusive);
    if (premise.verdict == Verdict::kRefuted) {
      ++premiseHeld;
      EXPECT_NE(kyFan.verdict, Verdict::kEstablished) << "trial " << trial;
    } else {
      ++premiseFailed;
    }
  }
  EXPECT_GT(premiseHeld, 0);
  EXPECT_GT(premiseFailed, 0);
}

TEST(HeadlineTest, BothCertificatesForAlphaAboveThreshold) {
  for (long alpha : {16, 20, 100}) {
    const auto kyFan = kyFanViolationCertificate(SequenceSpec::sawtooth(), kZero, scaledHat(q(alpha)), 64);
    const auto premise = pseudomonotonePremiseAudit(SequenceSpec::sawtooth(), kZero, 64);
    EXPECT_EQ(kyFan.verdict, Verdict::kEstablished);
    EXPECT_EQ(kyFan.witness.margin->exact(), 3 * alpha - 45);
    EXPECT_EQ(premise.verdict, Verdict::kEstablished);
  }
}

TEST(CertificateJsonTest, Schema) {
  const auto j = toJson(kyFanViolationCertificate(SequenceSpec::sawtooth(), kZero, scaledHat(q(16)), 64));
  EXPECT_EQ(j["property"], "kyFanViolation");
  EXPECT_EQ(j["verdict"], "established");
  EXPECT_EQ(j["exactness"], "exact");
  EXPECT_EQ(j["witness"]["margin"], nlohmann::json::array({"3", "1"}));
  EXPECT_EQ(j["witness"]["tail_constant"], nlohmann::json::array({"-3", "1"}));
  EXPECT_EQ(j["witness"]["k_window"], nlohmann::json::array({33, 64}));
  EXPECT_TRUE(j["witness"]["y"].contains("breakpoints"));

  const auto h = toJson(holderBoundednessCheck(sawtooth(1), sawtooth(2)));
  EXPECT_EQ(h["exactness"], "approximate");
  EXPECT_EQ(h["witness"]["margin"]["approx"], true);
  EXPECT_TRUE(h["witness"]["k_window"].is_null());
}

}  // namespace
}  // namespace viproplab::proplab
