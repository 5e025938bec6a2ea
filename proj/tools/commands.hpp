// Copyright 2026 The mmot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmot/io.hpp"

namespace mmot::cli {

/// Flags shared by every subcommand.
struct Globals {
  bool csv = false;
  bool approx = false;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

/// What a command produced: a JSON document, a CSV table, or both (the
/// driver prints one of them), plus the exit status.
struct Result {
  io::Json json;
  std::string csv;
  int status = 0;
};

inline constexpr int kOk = 0;
inline constexpr int kIoError = 1;
inline constexpr int kMathFailure = 2;

Result check_order(const Globals& g, const std::vector<std::string>& files);
Result decompose(const Globals& g, const std::string& mu, const std::string& nu);
Result shadow(const Globals& g, const std::optional<std::string>& source, const std::optional<std::string>& mass,
              const std::optional<std::string>& at, const std::string& target);
Result obstructed_shadow(const Globals& g, const std::string& source, const std::vector<std::string>& chain);
Result left_monotone(const Globals& g, const std::vector<std::string>& files, const std::string& policy,
                     std::size_t path_cap);
Result solve(const Globals& g, const std::vector<std::string>& files, const std::string& reward, const std::string& mode);
Result verify_support(const Globals& g, const std::string& coupling, const std::vector<std::string>& marginals);
Result polar(const Globals& g, const std::vector<std::string>& files, const std::string& paths_file, bool free_middle);
Result free_problem(const Globals& g, const std::string& mu0, const std::string& mun, std::size_t steps,
                    const std::string& reward);
Result examples(const Globals& g, const std::optional<std::string>& name, bool all);
Result suite(const Globals& g, std::size_t count, std::size_t max_support);

}  // namespace mmot::cli
