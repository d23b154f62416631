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

#include "catalyst/scenario.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "catalyst/capacity.hpp"
#include "catalyst/constructions.hpp"
#include "catalyst/random.hpp"

namespace catalyst {
namespace {

const std::vector<std::string>& kinds() {
  static const std::vector<std::string> k{"verify", "construct", "capacity", "bound", "theorem-suite"};
  return k;
}

Check flag(const std::string& name, bool passed, Json diagnostics = Json::object()) {
  return Check{name, passed, std::move(diagnostics)};
}

Check bounded(const std::string& name, double value, double threshold) {
  return Check{name, value <= threshold, Json{{"value", value}, {"threshold", threshold}}};
}

double tolerance(const Scenario& s, const std::string& key, double fallback) {
  const auto it = s.tolerances.find(key);
  return it == s.tolerances.end() ? fallback : it->second;
}

std::filesystem::path resolve(const Scenario& s, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() || s.base_dir.empty() ? p : s.base_dir / p;
}

template <typename T>
T param(const Scenario& s, const char* key) {
  if (!s.params.contains(key)) throw ParseError(std::string("scenario params need '") + key + "'");
  try {
    return s.params.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("param '") + key + "': " + e.what());
  }
}

std::optional<Distribution> source_param(const Scenario& s) {
  if (s.params.contains("source_file")) {
    return distribution_from_json(read_json_file(resolve(s, param<std::string>(s, "source_file"))));
  }
  if (s.params.contains("source")) return distribution_from_json(s.params.at("source"));
  return std::nullopt;
}

PhaseSolverOptions solver_options(const Scenario& s, std::uint64_t seed) {
  PhaseSolverOptions opts;
  opts.seed = seed;
  opts.tol = tolerance(s, "solver", opts.tol);
  opts.max_iter = s.params.value("max_iter", opts.max_iter);
  return opts;
}

RandProcess construct_process(const Scenario& s, const std::string& name, std::uint64_t seed) {
  const auto d = param<std::size_t>(s, "dim");
  const std::optional<Distribution> source = source_param(s);
  if (name == "uniform-dephasing") return uniform_dephasing(d);
  if (name == "weyl-erasure") return weyl_erasure(d);
  if (name == "dephasing") {
    return classical_dephasing_from_source(source.value_or(Distribution::uniform(d)), d,
                                           solver_options(s, seed));
  }
  if (name == "erasure") {
    return classical_erasure_from_source(source.value_or(Distribution::uniform(d * d)), d,
                                         solver_options(s, seed));
  }
  throw ParseError("unknown construction '" + name + "'");
}

RandProcess process_param(const Scenario& s, std::uint64_t seed) {
  if (s.params.contains("process_file")) {
    return process_from_json(read_json_file(resolve(s, param<std::string>(s, "process_file"))));
  }
  if (s.params.contains("process")) return process_from_json(s.params.at("process"));
  if (s.params.contains("construction")) {
    return construct_process(s, param<std::string>(s, "construction"), seed);
  }
  throw ParseError("scenario needs 'process_file', 'process' or 'construction'");
}

QChannel channel_param(const Scenario& s) {
  if (s.params.contains("channel_file")) {
    return channel_from_json(read_json_file(resolve(s, param<std::string>(s, "channel_file"))));
  }
  if (!s.params.contains("channel")) throw ParseError("scenario needs 'channel' or 'channel_file'");
  const Json& c = s.params.at("channel");
  if (c.is_object()) return channel_from_json(c);
  const std::string name = param<std::string>(s, "channel");
  const auto d = param<std::size_t>(s, "dim");
  if (name == "dephasing") return QChannel::dephasing(d);
  if (name == "erasure") return QChannel::erasure(d);
  if (name == "identity") return QChannel::identity(d);
  throw ParseError("unknown channel '" + name + "'");
}

std::vector<Check> verification_checks(const RandProcess& p, double tol, double property_tol) {
  const IndependenceCheck ru = is_randomness_utilizing(p, tol);
  std::vector<Check> out{flag("randomness_utilizing", ru.randomness_utilizing,
                              Json{{"independence_error", ru.independence_error}, {"threshold", tol}})};
  if (!ru.randomness_utilizing) return out;
  const VerificationReport r = verify(p, tol);
  double excess = 0.0;
  for (const EntropyRow& row : r.entropy_table) excess = std::max(excess, row.source_bits - row.residue_bits);
  out.push_back(flag("catalytic", r.catalytic, Json{{"spectrum_error", r.spectrum_error}}));
  out.push_back(bounded("unital", r.unital_error, property_tol));
  out.push_back(flag("majorization", r.majorization_ok));
  out.push_back(bounded("renyi_monotone", std::max(0.0, excess), property_tol));
  out.push_back(flag("report", true, to_json(r)));
  return out;
}

std::vector<Check> run_verify(const Scenario& s, std::uint64_t seed, double tol) {
  return verification_checks(process_param(s, seed), tol, tolerance(s, "property", 1e-8));
}

std::vector<Check> run_construct(const Scenario& s, std::uint64_t seed, double tol) {
  const auto name = param<std::string>(s, "construction");
  const auto d = param<std::size_t>(s, "dim");
  const bool dephasing = name.find("dephasing") != std::string::npos;
  const double log_d = std::log2(static_cast<double>(d));
  const double required = dephasing ? log_d : 2.0 * log_d;  // classical bound with exact C_EA

  if (name.rfind("generalized-", 0) == 0) {
    const std::optional<Distribution> source = source_param(s);
    if (!source) throw ParseError("generalized constructions need a source");
    const GeneralizedTarget kind = dephasing ? GeneralizedTarget::Dephasing : GeneralizedTarget::Erasure;
    std::optional<GeneralizedProcess> g;
    try {
      g = generalized_process(kind, DensityMatrix::diagonal(*source), d);
    } catch (const Infeasible& e) {
      return {flag("constructed", false, Json{{"error", e.what()}})};
    }
    const RepeatRunReport rr = repeat_run(*g, seed, s.params.value("trials", std::size_t{20}));
    const double t = tolerance(s, "factorization", 1e-8);
    return {flag("constructed", true, Json{{"mixture", to_json(g->mixture)}, {"workspace", g->workspace()}}),
            bounded("round1_factorization", rr.round1_factorization, t),
            bounded("round1_independence", rr.round1_independence, t),
            bounded("round2_factorization", rr.round2_factorization, t),
            bounded("round2_independence", rr.round2_independence, t),
            flag("reusable_min_entropy", rr.reusable_min_entropy >= required - 1e-9,
                 Json{{"value", rr.reusable_min_entropy}, {"required", required}})};
  }

  std::optional<RandProcess> p;
  try {
    p = construct_process(s, name, seed);
  } catch (const Infeasible& e) {
    return {flag("constructed", false, Json{{"error", e.what()}})};
  } catch (const NoConvergence& e) {
    return {flag("constructed", false, Json{{"error", e.what()}, {"final_defect", e.final_defect()}})};
  }
  std::vector<Check> out{flag("constructed", true, Json{{"process", to_json(*p)}})};
  for (Check& c : verification_checks(*p, tol, tolerance(s, "property", 1e-8))) out.push_back(std::move(c));

  const QChannel target = dephasing ? QChannel::dephasing(d) : QChannel::erasure(d);
  out.push_back(bounded("implements_target", channel_distance(p->channel(), target),
                        tolerance(s, "channel", 1e-8)));
  if (dephasing) {
    Rng rng(seed);
    double off = 0.0;
    const QChannel c = p->channel();
    for (std::size_t i = 0; i < 5; ++i) {
      const CMatrix out_state = apply(c, random_density(d, rng).matrix());
      off = std::max(off, (out_state - CMatrix(out_state.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
    }
    out.push_back(bounded("off_diagonal", off, tolerance(s, "off_diagonal", 1e-7)));
  }
  const double s_min = renyi_entropy(p->source(), kInfinity).bits;
  out.push_back(flag("min_entropy_bound", s_min >= required - 1e-9,
                     Json{{"source_min_entropy", s_min}, {"classical_bound", required}}));
  return out;
}

std::vector<Check> run_capacity(const Scenario& s, std::uint64_t seed) {
  CapacityOptions opts;
  opts.seed = seed;
  opts.tol = tolerance(s, "gradient", opts.tol);
  opts.max_iter = s.params.value("max_iter", opts.max_iter);
  const CapacityReport r = ea_capacity(channel_param(s), opts);
  std::vector<Check> out{flag("converged", r.converged, to_json(r))};
  if (s.params.contains("expected")) {
    const double expected = number_from_json(s.params.at("expected"));
    out.push_back(flag("c_ea_expected", std::abs(r.c_ea - expected) <= tolerance(s, "capacity", 1e-3),
                       Json{{"c_ea", r.c_ea}, {"expected", expected}}));
  }
  return out;
}

std::vector<Check> run_bound(const Scenario& s, std::uint64_t seed) {
  const RandProcess p = process_param(s, seed);
  CapacityOptions opts;
  opts.seed = seed;
  const BoundReport r = check_bound(p, s.params.value("classical", true), tolerance(s, "bound", 1e-6), opts);
  std::vector<Check> out{flag("bound_holds", r.holds(), to_json(r))};
  if (s.params.value("expect_tight", false)) {
    const double applicable = r.classical_hint ? r.classical_bound : r.quantum_bound;
    out.push_back(bounded("tight", std::abs(r.source_min_entropy - applicable), tolerance(s, "tight", 1e-6)));
  }
  return out;
}

Json scenario_json(const std::string& name, const std::string& kind, Json params,
                   Json tolerances = Json::object()) {
  return Json{{"name", name}, {"kind", kind}, {"params", std::move(params)}, {"seed", kDefaultSeed},
              {"tolerances", std::move(tolerances)}};
}

Json suite(const std::string& name, const std::string& theorem, std::size_t count) {
  return scenario_json(name, "theorem-suite", Json{{"theorem", theorem}, {"count", count}});
}

const std::map<std::string, Json>& catalog() {
  static const std::map<std::string, Json> entries = [] {
    std::map<std::string, Json> c;
    auto add = [&](Json j) { c.emplace(j.at("name").get<std::string>(), std::move(j)); };
    add(suite("randomness-utilizing", "randomness-utilizing", 24));
    add(suite("renyi-monotonicity", "renyi-monotonicity", 24));
    add(suite("majorization", "majorization", 24));
    add(suite("dimcat", "dimcat", 24));
    add(suite("unital", "unital", 24));
    add(suite("no-secret", "no-secret", 12));
    add(suite("no-hiding", "no-hiding", 12));
    add(suite("reverse", "reverse", 12));
    add(suite("convexity", "convexity", 8));
    add(suite("couple", "couple", 6));
    add(suite("nondeg", "nondeg", 24));
    add(suite("bound-constructions", "bound", 4));
    add(suite("lemma-cap", "lemma-cap", 1));
    add(suite("conservation-law", "conservation-law", 6));
    add(suite("phase-solver", "phase-solver", 10));
    add(suite("birkhoff", "birkhoff", 50));
    add(scenario_json("bound-dephasing", "bound",
                      Json{{"construction", "uniform-dephasing"}, {"dim", 2}, {"classical", true},
                           {"expect_tight", true}}));
    add(scenario_json("bound-erasure", "bound",
                      Json{{"construction", "weyl-erasure"}, {"dim", 2}, {"classical", true},
                           {"expect_tight", true}}));
    add(scenario_json("worked-example-dephasing-138", "construct",
                      Json{{"construction", "dephasing"}, {"dim", 2}, {"source", {0.125, 0.375, 0.5}}},
                      Json{{"off_diagonal", 1e-10}, {"solver", 1e-12}}));
    add(scenario_json("generalized-dephasing", "construct",
                      Json{{"construction", "generalized-dephasing"}, {"dim", 2},
                           {"source", {0.125, 0.375, 0.5}}}));
    add(scenario_json("generalized-erasure", "construct",
                      Json{{"construction", "generalized-erasure"}, {"dim", 2},
                           {"source", {0.125, 0.125, 0.125, 0.125, 0.25, 0.25}}}));
    add(scenario_json("capacity-dephasing", "capacity",
                      Json{{"channel", "dephasing"}, {"dim", 2}, {"expected", 1.0}}));
    add(scenario_json("capacity-erasure", "capacity",
                      Json{{"channel", "erasure"}, {"dim", 2}, {"expected", 0.0}}));
    add(scenario_json("capacity-identity", "capacity",
                      Json{{"channel", "identity"}, {"dim", 2}, {"expected", 2.0}}));
    add(scenario_json("verify-weyl-erasure", "verify",
                      Json{{"construction", "weyl-erasure"}, {"dim", 2}}));
    return c;
  }();
  return entries;
}

}  // namespace

Scenario Scenario::parse(const Json& j, std::filesystem::path base_dir) {
  if (!j.is_object()) throw ParseError("scenario must be a JSON object");
  Scenario s;
  s.base_dir = std::move(base_dir);
  try {
    s.name = j.at("name").get<std::string>();
    s.kind = j.at("kind").get<std::string>();
    if (j.contains("params")) s.params = j.at("params");
    if (j.contains("seed") && !j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerances")) {
      for (const auto& [key, value] : j.at("tolerances").items()) s.tolerances[key] = value.get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid scenario: ") + e.what());
  }
  if (std::find(kinds().begin(), kinds().end(), s.kind) == kinds().end()) {
    throw ParseError("unknown scenario kind '" + s.kind + "'");
  }
  if (!s.params.is_object()) throw ParseError("scenario params must be an object");
  for (const char* key : {"process_file", "channel_file", "source_file"}) {
    if (s.params.contains(key)) {
      if (!s.params.at(key).is_string()) throw ParseError(std::string(key) + " must be a path");
      const std::filesystem::path p = resolve(s, s.params.at(key).get<std::string>());
      if (!std::filesystem::exists(p)) throw ParseError("referenced file does not exist: " + p.string());
    }
  }
  return s;
}

Scenario Scenario::load(const std::filesystem::path& path) {
  return parse(read_json_file(path), path.parent_path());
}

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Json RunReport::to_json(bool include_wall_time) const {
  Json list = Json::array();
  for (const Check& c : checks) {
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"diagnostics", c.diagnostics}});
  }
  Json j{{"scenario", scenario}, {"kind", kind},           {"seed", seed},
         {"checks", std::move(list)}, {"passed", passed()}, {"version", kToolkitVersion}};
  if (include_wall_time) j["wall_time_s"] = wall_time_s;
  return j;
}

std::uint64_t resolve_seed(const RunOptions& opts, const Scenario& s) {
  if (opts.seed) return *opts.seed;
  if (s.seed) return *s.seed;
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError(std::string(kSeedEnvVar) + " is not an integer");
    }
  }
  return kDefaultSeed;
}

RunReport run(const Scenario& s, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.scenario = s.name;
  report.kind = s.kind;
  report.seed = resolve_seed(opts, s);
  const double tol = opts.tol.value_or(tolerance(s, "independence", kIndependenceTol));

  if (s.kind == "verify") {
    report.checks = run_verify(s, report.seed, tol);
  } else if (s.kind == "construct") {
    report.checks = run_construct(s, report.seed, tol);
  } else if (s.kind == "capacity") {
    report.checks = run_capacity(s, report.seed);
  } else if (s.kind == "bound") {
    report.checks = run_bound(s, report.seed);
  } else {
    report.checks = run_suite(param<std::string>(s, "theorem"), SuiteContext{s, report.seed, tol});
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

RunReport run_file(const std::filesystem::path& path, const RunOptions& opts) {
  return run(Scenario::load(path), opts);
}

std::vector<RunReport> run_many(const std::vector<std::filesystem::path>& paths, std::size_t jobs,
                                const RunOptions& opts) {
  std::vector<RunReport> reports(paths.size());
  std::vector<std::exception_ptr> errors(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) {
      try {
        reports[i] = run_file(paths[i], opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(jobs, paths.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

const std::vector<std::string>& builtin_catalog() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : catalog()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

Json emit_builtin(const std::string& name) {
  const auto it = catalog().find(name);
  if (it == catalog().end()) {
    std::string list;
    for (const std::string& n : builtin_catalog()) list += "\n  " + n;
    throw Error("unknown scenario '" + name + "'; available:" + list);
  }
  return it->second;
}

}  // namespace catalyst
