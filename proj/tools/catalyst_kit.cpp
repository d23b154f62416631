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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catalyst/capacity.hpp"
#include "catalyst/constructions.hpp"
#include "catalyst/io.hpp"
#include "catalyst/scenario.hpp"

namespace {

using catalyst::Json;

constexpr int kExitCheckFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitInternal = 3;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out;
  std::size_t jobs = 1;
};

// Input files are validated while loading; any failure there is a parse error.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename F>
auto load(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

void emit(const Globals& g, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    catalyst::write_text_file(g.out, text);
  }
}

std::uint64_t seed_or_default(const Globals& g) {
  catalyst::Scenario none;
  return catalyst::resolve_seed(catalyst::RunOptions{g.seed, g.tol}, none);
}

int cmd_run(const Globals& g, const std::vector<std::string>& files) {
  std::vector<std::filesystem::path> paths(files.begin(), files.end());
  std::vector<catalyst::Scenario> parsed;
  for (const auto& p : paths) parsed.push_back(catalyst::Scenario::load(p));
  const auto reports = catalyst::run_many(paths, g.jobs, catalyst::RunOptions{g.seed, g.tol});
  bool ok = true;
  Json out = Json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed();
    out.push_back(r.to_json());
  }
  emit(g, reports.size() == 1 ? out.front() : out);
  return ok ? 0 : kExitCheckFailed;
}

int cmd_emit(const Globals& g, const std::string& name, bool list) {
  if (list || name.empty()) {
    for (const auto& n : catalyst::builtin_catalog()) std::cout << n << "\n";
    return 0;
  }
  Json j;
  try {
    j = catalyst::emit_builtin(name);
  } catch (const catalyst::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }
  emit(g, j);
  return 0;
}

int cmd_construct(const Globals& g, const std::string& which, std::size_t dim,
                  const std::string& source_file, std::size_t trials) {
  std::optional<catalyst::Distribution> source;
  if (!source_file.empty()) {
    source = load(source_file, [&] { return catalyst::distribution_from_json(catalyst::read_json_file(source_file)); });
  }
  const std::uint64_t seed = seed_or_default(g);
  const double tol = g.tol.value_or(catalyst::kIndependenceTol);

  if (which == "generalized-dephasing" || which == "generalized-erasure") {
    if (!source) throw InputError("generalized constructions need --source");
    const auto kind = which == "generalized-dephasing" ? catalyst::GeneralizedTarget::Dephasing
                                                       : catalyst::GeneralizedTarget::Erasure;
    const auto proc = catalyst::generalized_process(kind, catalyst::DensityMatrix::diagonal(*source), dim);
    const auto rr = catalyst::repeat_run(proc, seed, trials);
    emit(g, Json{{"process", catalyst::to_json(proc)}, {"repeat_run", catalyst::to_json(rr)}});
    const bool ok = rr.round1_factorization <= 1e-8 && rr.round2_factorization <= 1e-8 &&
                    rr.round1_independence <= 1e-8 && rr.round2_independence <= 1e-8;
    return ok ? 0 : kExitCheckFailed;
  }

  catalyst::PhaseSolverOptions opts;
  opts.seed = seed;
  std::optional<catalyst::RandProcess> p;
  if (which == "dephasing") {
    p = catalyst::classical_dephasing_from_source(source.value_or(catalyst::Distribution::uniform(dim)), dim, opts);
  } else {
    p = catalyst::classical_erasure_from_source(source.value_or(catalyst::Distribution::uniform(dim * dim)), dim,
                                                opts);
  }
  const catalyst::VerificationReport r = catalyst::verify(*p, tol);
  emit(g, Json{{"process", catalyst::to_json(*p)}, {"verification", catalyst::to_json(r)}});
  return r.catalytic ? 0 : kExitCheckFailed;
}

int cmd_verify(const Globals& g, const std::string& file) {
  const auto p = load(file, [&] { return catalyst::process_from_json(catalyst::read_json_file(file)); });
  const double tol = g.tol.value_or(catalyst::kIndependenceTol);
  const auto check = catalyst::is_randomness_utilizing(p, tol);
  if (!check.randomness_utilizing) {
    emit(g, Json{{"randomness_utilizing", false}, {"independence_error", check.independence_error}});
    return kExitCheckFailed;
  }
  emit(g, catalyst::to_json(catalyst::verify(p, tol)));
  return 0;
}

int cmd_capacity(const Globals& g, const std::string& file, std::optional<double> tol,
                 std::size_t max_iter) {
  const auto c = load(file, [&] { return catalyst::channel_from_json(catalyst::read_json_file(file)); });
  catalyst::CapacityOptions opts;
  opts.seed = seed_or_default(g);
  opts.max_iter = max_iter;
  if (tol) opts.tol = *tol;
  const auto r = catalyst::ea_capacity(c, opts);
  emit(g, catalyst::to_json(r));
  return r.converged ? 0 : kExitCheckFailed;
}

int cmd_check_bound(const Globals& g, const std::string& file, bool classical) {
  const auto p = load(file, [&] { return catalyst::process_from_json(catalyst::read_json_file(file)); });
  catalyst::CapacityOptions opts;
  opts.seed = seed_or_default(g);
  const auto r = catalyst::check_bound(p, classical, g.tol.value_or(1e-6), opts);
  emit(g, catalyst::to_json(r));
  return r.holds() ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Catalytic randomness toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random draw");
  app.add_option("--tol", g.tol, "Residue independence tolerance");
  app.add_option("--out", g.out, "Write the JSON result to this file");
  app.add_option("--jobs", g.jobs, "Scenarios to run in parallel")->check(CLI::PositiveNumber);
  app.fallthrough();

  std::vector<std::string> files;
  auto* run = app.add_subcommand("run", "Run scenario files");
  run->add_option("scenarios", files, "Scenario JSON files")->required();

  std::string emit_name;
  bool emit_list = false;
  auto* emit_cmd = app.add_subcommand("emit", "Print a built-in scenario");
  emit_cmd->add_option("name", emit_name, "Catalog entry");
  emit_cmd->add_flag("--list", emit_list, "List the catalog");

  std::string which, source;
  std::size_t dim = 2, trials = 20;
  auto* construct = app.add_subcommand("construct", "Build a randomness-utilizing process");
  construct->add_option("construction", which, "Construction")
      ->required()
      ->check(CLI::IsMember({"dephasing", "erasure", "generalized-dephasing", "generalized-erasure"}));
  construct->add_option("--dim", dim, "System dimension")->required()->check(CLI::Range(2, 16));
  construct->add_option("--source", source, "Source distribution JSON");
  construct->add_option("--trials", trials, "Random input pairs for the two-round check");

  std::string process_file;
  auto* verify = app.add_subcommand("verify", "Verify a process");
  verify->add_option("--process", process_file, "Process JSON")->required();

  std::string channel_file;
  std::optional<double> cap_tol;
  std::size_t max_iter = 2000;
  auto* capacity = app.add_subcommand("capacity", "Entanglement-assisted capacity of a channel");
  capacity->add_option("--channel", channel_file, "Channel JSON")->required();
  capacity->add_option("--tol", cap_tol, "Stationarity tolerance");
  capacity->add_option("--max-iter", max_iter, "Iterations per start");

  bool classical = false;
  auto* bound = app.add_subcommand("check-bound", "Min-entropy bounds for a process");
  bound->add_option("--process", process_file, "Process JSON")->required();
  bound->add_flag("--classical", classical, "The source is used classically");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*run) return cmd_run(g, files);
    if (*emit_cmd) return cmd_emit(g, emit_name, emit_list);
    if (*construct) return cmd_construct(g, which, dim, source, trials);
    if (*verify) return cmd_verify(g, process_file);
    if (*capacity) return cmd_capacity(g, channel_file, cap_tol, max_iter);
    if (*bound) return cmd_check_bound(g, process_file, classical);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const catalyst::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const catalyst::Infeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const catalyst::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const catalyst::NoConvergence& e) {
    std::cerr << "error: " << e.what() << " (final defect " << e.final_defect() << ")\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
