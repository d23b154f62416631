// Copyright 2026 The catalyst-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON encodings. Matrices are {"dims": [...], "re_im": [[re, im], ...]} with
// the entries in row-major order; "dims" lists the subsystem factors.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "catalyst/capacity.hpp"
#include "catalyst/channels.hpp"
#include "catalyst/constructions.hpp"
#include "catalyst/errors.hpp"
#include "catalyst/randproc.hpp"

namespace catalyst {

using Json = nlohmann::json;

/// Malformed or semantically invalid JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

Json matrix_to_json(const CMatrix& m, const Dims& dims = {});
/// Reads a square matrix; `dims` (when non-null) receives the factor list.
CMatrix matrix_from_json(const Json& j, Dims* dims = nullptr);

Json to_json(const QChannel& c);
QChannel channel_from_json(const Json& j);

Json to_json(const RandProcess& p);
RandProcess process_from_json(const Json& j);

/// Accepts a bare array or {"probs": [...]}.
Distribution distribution_from_json(const Json& j);
Json to_json(const Distribution& p);

Json to_json(const VerificationReport& r);
Json to_json(const CapacityReport& r);
Json to_json(const BoundReport& r);
Json to_json(const LemmaCapReport& r);
Json to_json(const UniformMixture& m);
Json to_json(const RepeatRunReport& r);
Json to_json(const GeneralizedProcess& g);

/// Doubles that may be infinite are written as "inf".
Json number_to_json(double x);
double number_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace catalyst
