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

#include "viproplab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "viproplab/gen.hpp"
#include "viproplab/proplab.hpp"
#include "viproplab/pwcalc.hpp"
#include "viproplab/visolve.hpp"

namespace viproplab::cli {

namespace {

using nlohmann::json;
using proplab::Certificate;
using proplab::Verdict;

// Errors that map to a specific exit code.
struct CommandError : std::runtime_error {
  CommandError(ExitCode c, const std::string& what) : std::runtime_error(what), code(c) {}
  ExitCode code;
};

struct Options {
  long kMax = proplab::kDefaultKMax;
  std::string alpha = "16";
  std::string expectNorm = "45";
  std::string format = "json";
  std::string out;
  long k = 4;
  int maxDegree = 5;
  int maxLevel = 6;
  std::string problemFile;
};

Rational parsePositive(const std::string& text, const char* name) {
  Rational q;
  try {
    q = parseRational(text);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kParseError, std::string("--") + name + ": " + e.what());
  }
  if (q <= 0) throw CommandError(kParseError, std::string("--") + name + " must be positive");
  return q;
}

void requireKMax(long kMax, long minimum) {
  if (kMax < minimum) {
    throw CommandError(kParseError, "--kmax must be >= " + std::to_string(minimum));
  }
}

// Writes to --out if given, else to out.
void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f || !(f << text)) throw CommandError(kIoError, "cannot write " + opt.out);
}

std::string dumpJson(const json& j) { return j.dump(2) + "\n"; }

int cmdReproduce(const Options& opt, std::ostream& out, std::ostream& err) {
  requireKMax(opt.kMax, 1);
  const Rational alpha = parsePositive(opt.alpha, "alpha");
  const Rational expectNorm = parsePositive(opt.expectNorm, "expect-norm");
  const Rational expectGap = expectNorm - 3 * alpha;
  const auto v = gen::scaledHat(alpha);

  json rows = json::array();
  std::ostringstream csv;
  csv << "k,norm_cubed,gap\n";
  long firstBad = 0;
  for (long k = 1; k <= opt.kMax; ++k) {
    const auto u = gen::sawtooth(k);
    const ExactReal norm = pwcalc::powNorm(pwcalc::derivative(u), 3);
    const ExactReal gap = proplab::equilibriumGap(u, v);
    const bool ok = norm == ExactReal(expectNorm) && gap == ExactReal(expectGap);
    if (!ok && firstBad == 0) firstBad = k;
    rows.push_back({{"k", k}, {"norm_cubed", toJson(norm)}, {"gap", toJson(gap)}, {"ok", ok}});
    csv << k << "," << norm.toString() << "," << gap.toString() << "\n";
  }
  const Rational threshold = gen::hatThreshold();
  const json doc{{"alpha", rationalToJson(alpha)},
                 {"expected_norm_cubed", rationalToJson(expectNorm)},
                 {"expected_gap", rationalToJson(expectGap)},
                 {"negative_gap_threshold", rationalToJson(threshold)},
                 {"rows", rows},
                 {"ok", firstBad == 0}};
  emit(opt, out, opt.format == "csv" ? csv.str() : dumpJson(doc));
  if (firstBad != 0) {
    err << "mismatch at k=" << firstBad << ": expected norm_cubed " << formatRational(expectNorm)
        << " and gap " << formatRational(expectGap) << "\n";
    return kMismatch;
  }
  return kOk;
}

int cmdCertify(const Options& opt, std::ostream& out, std::ostream&) {
  requireKMax(opt.kMax, proplab::kMinKMax);
  const Rational alpha = parsePositive(opt.alpha, "alpha");
  const auto seq = gen::SequenceSpec::sawtooth();
  const auto limit = pwcalc::PiecewiseLinearFn::zero();
  const auto kyFan = proplab::kyFanViolationCertificate(seq, limit, gen::scaledHat(alpha), opt.kMax);
  const auto premise = proplab::pseudomonotonePremiseAudit(seq, limit, opt.kMax);
  const Rational threshold = gen::hatThreshold();
  const bool expectViolation = alpha > threshold;
  const ExitCode code = certifyOutcome(kyFan, premise, expectViolation);

  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "property,verdict,margin,tail_constant,exactness\n";
    for (const auto* c : {&kyFan, &premise}) {
      csv << proplab::propertyName(c->property) << "," << proplab::verdictName(c->verdict) << ","
          << (c->witness.margin ? c->witness.margin->toString() : "") << ","
          << (c->witness.tailConstant ? c->witness.tailConstant->toString() : "") << ","
          << proplab::exactnessName(c->exactness) << "\n";
    }
    emit(opt, out, csv.str());
    return code;
  }
  const bool headline = kyFan.verdict == Verdict::kEstablished && premise.verdict == Verdict::kEstablished;
  const json doc{
      {"alpha", rationalToJson(alpha)},
      {"violation_threshold", rationalToJson(threshold)},
      {"certificates", json::array({proplab::toJson(kyFan), proplab::toJson(premise)})},
      {"summary",
       headline ? "along the sawtooth sequence: not Ky-Fan hemicontinuous, while the "
                  "pseudomonotonicity premise is vacuous (evidence along this sequence only)"
                : "no Ky-Fan violation witnessed along this direction"}};
  emit(opt, out, dumpJson(doc));
  return code;
}

int cmdWeakEvidence(const Options& opt, std::ostream& out, std::ostream&) {
  requireKMax(opt.kMax, 2);
  std::vector<pwcalc::TestFunction> family;
  try {
    family = proplab::standardTestFamily(opt.maxDegree, opt.maxLevel);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kParseError, e.what());
  }
  const auto report = proplab::weakConvergenceEvidence(gen::SequenceSpec::sawtooth(), family, opt.kMax);
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "phi,decay_constant,head_peak,tail_peak,all_zero,consistent\n";
    for (const auto& s : report.series) {
      csv << '"' << s.label << "\"," << formatRational(s.decayConstant) << ","
          << formatRational(s.headPeak) << "," << formatRational(s.tailPeak) << ","
          << (s.allZero ? "true" : "false") << "," << (s.consistent ? "true" : "false") << "\n";
    }
    emit(opt, out, csv.str());
  } else {
    emit(opt, out, dumpJson(proplab::toJson(report)));
  }
  return report.consistent ? kOk : kMismatch;
}

int cmdRemark32(const Options& opt, std::ostream& out, std::ostream&) {
  requireKMax(opt.kMax, 1);
  // The tail rule needs a window; short runs still print every row.
  const long window = std::max(opt.kMax, proplab::kMinKMax);
  const auto cert = proplab::remark32Certificate(window);
  json rows = json::array();
  std::ostringstream csv;
  csv << "k,pairing\n";
  for (long k = 1; k <= opt.kMax; ++k) {
    const gen::L2SeqVector ek(k);
    const ExactReal value = gen::l2Pairing(ek, ek) - gen::l2Pairing(ek, gen::L2FiniteVector{});
    rows.push_back({{"k", k}, {"pairing", toJson(value)}});
    csv << k << "," << value.toString() << "\n";
  }
  const bool nonzero = cert.verdict == Verdict::kEstablished;
  const std::string verdict = nonzero ? "limit not zero" : "limit zero";
  if (opt.format == "csv") {
    csv << "limit," << (cert.witness.tailConstant ? cert.witness.tailConstant->toString() : "") << "\n"
        << "verdict," << verdict << "\n";
    emit(opt, out, csv.str());
  } else {
    const json doc{{"rows", rows},
                   {"limit", cert.witness.tailConstant ? toJson(*cert.witness.tailConstant) : json(nullptr)},
                   {"verdict", verdict},
                   {"certificate", proplab::toJson(cert)}};
    emit(opt, out, dumpJson(doc));
  }
  if (cert.verdict == Verdict::kInconclusive) return kInconclusive;
  return nonzero ? kOk : kMismatch;
}

int cmdFigure(const Options& opt, std::ostream& out, std::ostream&) {
  if (opt.k < 1) throw CommandError(kParseError, "--k must be >= 1");
  const auto u = gen::sawtooth(opt.k);
  const auto du = pwcalc::derivative(u);
  const std::filesystem::path dir = opt.out.empty() ? "." : opt.out;

  std::ostringstream left;
  left << "t,value,t_float,value_float\n";
  for (std::size_t i = 0; i < u.breakpoints().size(); ++i) {
    const auto& t = u.breakpoints()[i];
    const auto& v = u.values()[i];
    left << formatRational(t) << "," << formatRational(v) << "," << json(toDouble(t)).dump() << ","
         << json(toDouble(v)).dump() << "\n";
  }
  std::ostringstream right;
  right << "t_left,t_right,t_mid,value,t_mid_float,value_float\n";
  for (std::size_t i = 0; i < du.pieces(); ++i) {
    const auto& a = du.breakpoints()[i];
    const auto& b = du.breakpoints()[i + 1];
    const Rational mid = (a + b) / 2;
    const auto& c = du.intervalValues()[i];
    right << formatRational(a) << "," << formatRational(b) << "," << formatRational(mid) << ","
          << formatRational(c) << "," << json(toDouble(mid)).dump() << ","
          << json(toDouble(c)).dump() << "\n";
  }

  const auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw CommandError(kIoError, "cannot write " + path.string());
  };
  const auto leftPath = dir / figureFunctionFile(opt.k);
  const auto rightPath = dir / figureDerivativeFile(opt.k);
  write(leftPath, left.str());
  write(rightPath, right.str());
  out << leftPath.string() << "\n" << rightPath.string() << "\n";
  return kOk;
}

int cmdSolve(const Options& opt, std::ostream& out, std::ostream& err) {
  std::ifstream f(opt.problemFile);
  if (!f) throw CommandError(kParseError, "cannot read problem file " + opt.problemFile);
  visolve::Problem problem = [&] {
    try {
      return visolve::problemFromJson(json::parse(f));
    } catch (const std::exception& e) {
      throw CommandError(kParseError, std::string("invalid problem: ") + e.what());
    }
  }();
  const auto result = problem.x0.empty()
                          ? visolve::extragradientSolve(problem.vi, problem.step)
                          : visolve::extragradientSolve(problem.vi, problem.x0, problem.step);
  emit(opt, out, dumpJson(visolve::toJson(result)));
  if (!result.converged) {
    err << "not converged after " << result.iterations << " iterations, residual " << result.residual
        << "\n";
    return kNotConverged;
  }
  return kOk;
}

}  // namespace

ExitCode certifyOutcome(const Certificate& kyFan, const Certificate& premise, bool expectViolation) {
  if (kyFan.verdict == Verdict::kInconclusive || premise.verdict == Verdict::kInconclusive) {
    return kInconclusive;
  }
  const Verdict expected = expectViolation ? Verdict::kEstablished : Verdict::kRefuted;
  return kyFan.verdict == expected && premise.verdict == Verdict::kEstablished ? kOk : kMismatch;
}

std::string figureFunctionFile(long k) { return "sawtooth_k" + std::to_string(k) + "_u.csv"; }
std::string figureDerivativeFile(long k) { return "sawtooth_k" + std::to_string(k) + "_grad.csv"; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification lab for variational-inequality operator properties", "viproplab"};
  app.require_subcommand(1);
  Options opt;

  const auto addFormat = [&opt](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out, "Output file (default: stdout)");
  };
  const auto addKMax = [&opt](CLI::App* cmd) {
    cmd->add_option("--kmax", opt.kMax, "Largest sequence index")->capture_default_str();
  };
  const auto addAlpha = [&opt](CLI::App* cmd) {
    cmd->add_option("--alpha", opt.alpha, "Hat slope alpha as p/q")->capture_default_str();
  };

  auto* reproduce = app.add_subcommand("reproduce", "Exact table of ||u_k'||^3 and Psi(u_k, v_alpha)");
  addKMax(reproduce);
  addAlpha(reproduce);
  reproduce->add_option("--expect-norm", opt.expectNorm, "Asserted value of ||u_k'||^3 (p/q)")
      ->capture_default_str();
  addFormat(reproduce);

  auto* certify = app.add_subcommand("certify", "Ky-Fan violation and pseudomonotonicity premise audit");
  addKMax(certify);
  addAlpha(certify);
  addFormat(certify);

  auto* weak = app.add_subcommand("weak-evidence", "Exact test integrals of u_k' (evidence, not proof)");
  addKMax(weak);
  weak->add_option("--max-degree", opt.maxDegree, "Monomials t^0..t^d")->capture_default_str();
  weak->add_option("--max-level", opt.maxLevel, "Dyadic indicators up to this level")->capture_default_str();
  addFormat(weak);

  auto* solve = app.add_subcommand("solve", "Solve a discrete p-Laplacian VI by extragradient");
  solve->add_option("problem", opt.problemFile, "Problem JSON file")->required();
  solve->add_option("--out", opt.out, "Result file (default: stdout)");

  auto* remark = app.add_subcommand("remark32", "l2 unit vectors: <e_k, e_k - 0> = 1, limit not zero");
  addKMax(remark);
  addFormat(remark);

  auto* figure = app.add_subcommand("figure", "CSV data of u_k and u_k' for plotting");
  figure->add_option("--k", opt.k, "Sawtooth index")->capture_default_str();
  figure->add_option("--out", opt.out, "Output directory (default: .)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kParseError;
  }

  try {
    if (*reproduce) return cmdReproduce(opt, out, err);
    if (*certify) return cmdCertify(opt, out, err);
    if (*weak) return cmdWeakEvidence(opt, out, err);
    if (*solve) return cmdSolve(opt, out, err);
    if (*remark) return cmdRemark32(opt, out, err);
    if (*figure) return cmdFigure(opt, out, err);
  } catch (const CommandError& e) {
    err << e.what() << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kParseError;
  }
  return kParseError;
}

}  // namespace viproplab::cli
