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

#ifndef VIPROPLAB_CLI_HPP_
#define VIPROPLAB_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "viproplab/proplab.hpp"

namespace viproplab::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kInconclusive = 2,
  kParseError = 3,
  kNotConverged = 4,
  kIoError = 5,
};

// Runs one command. args excludes the program name, e.g.
// {"reproduce", "--kmax", "8", "--alpha", "31/2"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Exit code of `certify`: kInconclusive if either certificate is
// inconclusive; otherwise kOk iff the premise failure is established and the
// Ky-Fan certificate is established exactly when a violation is expected
// (alpha above the computed threshold).
ExitCode certifyOutcome(const proplab::Certificate& kyFan, const proplab::Certificate& premise,
                        bool expectViolation);

// Figure data file names for sawtooth(k) inside a directory.
std::string figureFunctionFile(long k);
std::string figureDerivativeFile(long k);

}  // namespace viproplab::cli

#endif  // VIPROPLAB_CLI_HPP_
