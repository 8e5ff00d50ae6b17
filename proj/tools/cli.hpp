// Copyright 2026 The cobf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "cobf/io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cobf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. args excludes the program name. The report goes to
/// out (or to --out), diagnostics to err. Returns 0 on success / feasible /
/// pass, 1 on infeasible / fail, 2 on usage or input errors.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct PaperConstant {
  std::string name;
  double quoted = 0.0;  ///< four-digit value from the literature
  double computed = 0.0;
};

/// The gadget constants quoted to four digits, recomputed.
std::vector<PaperConstant> paper_constants();

}  // namespace cobf::cli
