// Copyright 2026 The lexdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEXDIST_TOOLS_CLI_HPP
#define LEXDIST_TOOLS_CLI_HPP

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lexdist::cli {

inline constexpr std::string_view kToolVersion = "lexdist 1.0.0";

enum ExitCode : int { kOk = 0, kInputError = 2, kAnalysisError = 3 };

/// Runs one invocation. `args` excludes the program name. The report goes to
/// `out`; errors are written to `err` as {code, message, context} JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// SHA-256 of a file's bytes, lowercase hex.
std::string file_sha256(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

/// Sorted-key compact JSON; non-finite numbers must already be strings.
std::string canonical_dump(const nlohmann::json& j);

/// JSON number for finite values, "inf"/"-inf"/"nan" otherwise.
nlohmann::json number(double v);

/// Shortest round-trip decimal text.
std::string format_double(double v);

}  // namespace lexdist::cli

#endif  // LEXDIST_TOOLS_CLI_HPP
