// Copyright 2026 The qeclie Authors
//
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qeclie/codes.hpp"
#include "qeclie/error_algebra.hpp"

namespace qeclie::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInvalidInput = 2 };

/// Runs the command line; reports go to `out` (or --out), diagnostics to
/// `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "3.5" or "7/2".
double parse_spin_value(const std::string& text);

/// builtin:spin25 | builtin:spin_cat:J | builtin:w_state:n,J |
/// builtin:multi_spin_cat:n,J | builtin:code422 | [file:]<path>.
Code parse_code_uri(const std::string& uri);

/// spin:grade=t[,axes=xyz|x|z] | pauli:weight=1 | file:<path>, acting on
/// the whole layout.
GradedErrorSet parse_error_uri(const std::string& uri, const SubsystemLayout& layout);

/// Per-site variant: spin:grade=t[,axes=...] | pauli:weight=1 | full |
/// file:<path> (operators on the site's space).
GradedErrorSet parse_site_error_uri(const std::string& uri, const SubsystemLayout& layout,
                                    std::size_t site);

/// Comma list of 1, Jx, Jy, Jz, J?^k for one spin.
std::vector<Operator> parse_generators(const std::string& list, Spin j);

/// Deterministic pretty printer: insertion-ordered keys, floats as %.17g.
/// Throws InvalidInput on NaN or infinity.
std::string to_json_text(const nlohmann::ordered_json& value);

/// Writes via a sibling temp file and rename.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace qeclie::cli
