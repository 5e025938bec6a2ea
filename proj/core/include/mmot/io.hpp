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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mmot/coupling.hpp"
#include "mmot/decomposition.hpp"
#include "mmot/errors.hpp"
#include "mmot/geometry.hpp"
#include "mmot/measure.hpp"
#include "mmot/mot.hpp"
#include "mmot/path_measure.hpp"
#include "mmot/shadow.hpp"

namespace mmot::io {

using Json = nlohmann::ordered_json;

/// Rationals travel as strings "p/q" (or "p"). With `approx` set, emitters
/// add a decimal rendering next to every exact value.
struct EmitOptions {
  bool approx = false;
};

/// Parse failures carry a JSON pointer into the document.
Rational rational_from_json(const Json& j, const std::string& pointer = "");

/// {"atoms":[{"x":"p/q","w":"r/s"},...]}. Weights must be positive;
/// repeated positions are merged.
DiscreteMeasure measure_from_json(const Json& j, const std::string& pointer = "");
Json to_json(const DiscreteMeasure& mu, const EmitOptions& options = {});

/// {"n":2,"paths":[{"x":["0","-1","-2"],"w":"1/4"},...]}.
PathMeasure coupling_from_json(const Json& j, const std::string& pointer = "");
Json to_json(const PathMeasure& p, const EmitOptions& options = {});

/// Intervals as {"lower":"a"|"-inf","upper":"b"|"inf","closed":[bool,bool]}.
Json to_json(const Interval& interval);
Json to_json(const StepDecomposition& d, const EmitOptions& options = {});
Json to_json(const ShadowResult& s, const EmitOptions& options = {});
Json to_json(const LeftMonotoneVerdict& v);
Json to_json(const NondegenerateVerdict& v);

template <class Scalar>
Json to_json(const DualCertificate<Scalar>& c, const EmitOptions& options = {});

/// Reads and parses a file. Missing files raise IoError, malformed text ParseError.
Json read_file(const std::filesystem::path& path);

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmot::io
