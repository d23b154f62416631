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

// Scenario files drive the command-line runner. A scenario is a JSON object
//
//   {"name": ..., "kind": "verify" | "construct" | "capacity" | "bound" |
//    "theorem-suite", "params": {...}, "seed": n, "tolerances": {...}}
//
// and running it yields a RunReport whose JSON form has sorted keys.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catalyst/io.hpp"

namespace catalyst {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20240531;
inline constexpr const char* kSeedEnvVar = "CATALYST_KIT_SEED";

struct Scenario {
  std::string name;
  std::string kind;
  Json params = Json::object();
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> tolerances;
  std::filesystem::path base_dir;  // *_file params resolve against this

  /// Throws ParseError on any schema violation.
  static Scenario parse(const Json& j, std::filesystem::path base_dir = {});
  static Scenario load(const std::filesystem::path& path);
};

struct Check {
  std::string name;
  bool passed = false;
  Json diagnostics = Json::object();
};

struct RunReport {
  std::string scenario;
  std::string kind;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  double wall_time_s = 0.0;

  bool passed() const;
  Json to_json(bool include_wall_time = true) const;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  /// Overrides the residue-independence tolerance of every scenario.
  std::optional<double> tol;
};

/// --seed, then the scenario's seed, then $CATALYST_KIT_SEED, then kDefaultSeed.
std::uint64_t resolve_seed(const RunOptions& opts, const Scenario& s);

RunReport run(const Scenario& s, const RunOptions& opts = {});
RunReport run_file(const std::filesystem::path& path, const RunOptions& opts = {});

/// Runs the files on up to `jobs` threads; results keep the input order.
/// Each scenario seeds its own generator, so results do not depend on `jobs`.
std::vector<RunReport> run_many(const std::vector<std::filesystem::path>& paths, std::size_t jobs,
                                const RunOptions& opts = {});

const std::vector<std::string>& builtin_catalog();
/// Throws Error listing the catalog for unknown names.
Json emit_builtin(const std::string& name);

/// Theorem suites available to "theorem-suite" scenarios.
const std::vector<std::string>& suite_names();

// Implemented in suites.cpp.
struct SuiteContext {
  const Scenario& scenario;
  std::uint64_t seed;
  double independence_tol;

  double tolerance(const std::string& key, double fallback) const;
  std::size_t count(std::size_t fallback) const;
};
std::vector<Check> run_suite(const std::string& theorem, const SuiteContext& ctx);

}  // namespace catalyst
