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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "catalyst/capacity.hpp"
#include "catalyst/constructions.hpp"
#include "catalyst/errors.hpp"
#include "catalyst/generators.hpp"
#include "catalyst/random.hpp"
#include "catalyst/scenario.hpp"

namespace catalyst {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Running maximum of an error, turned into a check against a threshold.
struct Worst {
  double value = 0.0;
  std::size_t cases = 0;
  void add(double x) {
    value = std::max(value, x);
    ++cases;
  }
  Check check(const std::string& name, double threshold) const {
    return Check{name, cases > 0 && value <= threshold,
                 Json{{"worst", value}, {"threshold", threshold}, {"cases", cases}}};
  }
};

Check flag(const std::string& name, bool passed, Json diagnostics = Json::object()) {
  return Check{name, passed, std::move(diagnostics)};
}

double spectrum_gap(const Distribution& a, const Distribution& b) {
  std::vector<double> x = a.sorted_descending(), y = b.sorted_descending();
  const std::size_t n = std::max(x.size(), y.size());
  x.resize(n, 0.0);
  y.resize(n, 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

Distribution feasible(std::size_t length, std::size_t block, Rng& rng) {
  for (;;) {
    Distribution p = random_distribution(length, rng);
    if (p.max() <= 1.0 / static_cast<double>(block) - 1e-3) return p;
  }
}

std::size_t param_size(const SuiteContext& ctx, const char* key, std::size_t fallback) {
  return ctx.scenario.params.value(key, fallback);
}

std::vector<Check> suite_randomness_utilizing(const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  Worst err;
  for (const auto& g : generator_family(ctx.count(24), rng)) {
    err.add(is_randomness_utilizing(g.process, ctx.independence_tol).independence_error);
  }

  CMatrix swap = CMatrix::Zero(4, 4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) swap(idx(i * 2 + j), idx(j * 2 + i)) = 1.0;
  }
  const IndependenceCheck swap_check = is_randomness_utilizing(
      RandProcess(UnitaryOp::from(swap), DensityMatrix::maximally_mixed(2)), ctx.independence_tol);
  std::size_t haar_rejected = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    const RandProcess p(UnitaryOp::from(haar_unitary(4, rng)), DensityMatrix::maximally_mixed(2));
    if (!is_randomness_utilizing(p, ctx.independence_tol).randomness_utilizing) ++haar_rejected;
  }
  return {err.check("family_independence", ctx.independence_tol),
          flag("swap_rejected", !swap_check.randomness_utilizing,
               Json{{"independence_error", swap_check.independence_error}}),
          flag("haar_rejected", haar_rejected == 5, Json{{"rejected", haar_rejected}, {"sampled", 5}})};
}

std::vector<Check> suite_reports(const SuiteContext& ctx, const std::string& theorem) {
  Rng rng(ctx.seed);
  const double tol = ctx.tolerance("property", 1e-8);
  Worst spectrum, unital, renyi;
  std::size_t majorization_failures = 0, cases = 0;
  for (const auto& g : generator_family(ctx.count(24), rng)) {
    const VerificationReport r = verify(g.process, ctx.independence_tol);
    ++cases;
    spectrum.add(r.spectrum_error);
    unital.add(r.unital_error);
    for (const EntropyRow& row : r.entropy_table) renyi.add(std::max(0.0, row.source_bits - row.residue_bits));
    if (!r.majorization_ok) ++majorization_failures;
  }
  if (theorem == "dimcat") return {spectrum.check("spectrum_equal", tol)};
  if (theorem == "unital") return {unital.check("unital_error", tol)};
  if (theorem == "renyi-monotonicity") return {renyi.check("renyi_excess", tol)};
  return {flag("source_majorizes_residue", cases > 0 && majorization_failures == 0,
               Json{{"failures", majorization_failures}, {"cases", cases}})};
}

std::vector<Check> suite_no_secret(const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const std::size_t inputs = param_size(ctx, "inputs", 10);
  Worst err;
  for (const auto& g : generator_family(ctx.count(12), rng)) {
    const UnitaryOp v = recovery_unitary(g.process, ctx.independence_tol);
    for (std::size_t i = 0; i < inputs; ++i) {
      const DensityMatrix rho = random_density(g.process.d_a(), rng);
      err.add(trace_norm(recover(g.process, v, rho).matrix() - rho.matrix()));
    }
  }
  // Neither marginal alone holds the input for the Weyl erasure.
  const RandProcess erasure = weyl_erasure(2);
  double weakest = kInfinity;
  for (std::size_t i = 0; i < inputs; ++i) {
    const DensityMatrix rho = DensityMatrix::pure(random_pure(2, rng));
    weakest = std::min(weakest, trace_norm(apply(erasure.channel(), rho).matrix() - rho.matrix()));
  }
  return {err.check("recovery_error", ctx.tolerance("recovery", 1e-8)),
          flag("marginal_cannot_recover", weakest > 0.1, Json{{"min_distance", weakest}})};
}

std::vector<Check> suite_no_hiding(const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  Worst independence, rank;
  std::uniform_int_distribution<std::size_t> pick(2, 3);
  const std::size_t count = ctx.count(12);
  for (std::size_t i = 0; i < count; ++i) {
    const RandProcess p = pure_source_process(pick(rng), pick(rng), rng, i % 2 == 0);
    independence.add(is_randomness_utilizing(p, ctx.independence_tol).independence_error);
    const QChannel c = p.channel();
    const Eigensystem es = hermitian_eigensystem(c.choi() / static_cast<double>(c.in_dim()));
    rank.add(es.values.size() > 1 ? std::abs(es.values(1)) : 0.0);
  }
  return {independence.check("pure_source_independence", ctx.independence_tol),
          rank.check("choi_second_eigenvalue", ctx.tolerance("property", 1e-8))};
}

std::vector<Check> suite_reverse(const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const double tol = ctx.tolerance("property", 1e-8);
  Worst channel, spectra, twice;
  for (const auto& g : generator_family(ctx.count(12), rng)) {
    const RandProcess rev = reverse_process(g.process, ctx.independence_tol);
    channel.add(channel_distance(rev.channel(), g.process.channel()));
    spectra.add(spectrum_gap(spectrum(residue(rev)), spectrum(g.process.source())));
    const RandProcess back = reverse_process(rev, ctx.independence_tol);
    twice.add(channel_distance(back.channel(), g.process.channel()));
  }
  return {channel.check("same_channel", tol), spectra.check("residue_is_source_spectrum", tol),
          twice.check("reverse_twice", tol)};
}

std::vector<Check> suite_convexity(const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  Worst channel;
  std::size_t non_catalytic = 0;
  const std::size_t count = ctx.count(8);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t d = 2 + i % 2;
    const RandProcess a = i % 3 == 0 ? uniform_dephasing(d) : random_controlled_process(d, 2, rng);
    const RandProcess b = random_controlled_process(d, 2, rng);
    const double w = weight(rng);
    const RandProcess mixed = convex_combine(a, b, w);
    channel.add(channel_distance(mixed.channel(), mix({{w, a.channel()}, {1.0 - w, b.channel()}})));
    if (!verify(mixed, ctx.independence_tol).catalytic) ++non_catalytic;
  }
  return {channel.check("channel_is_mixture", ctx.tolerance("channel", 1e-9)),
          flag("catalytic", non_catalytic == 0, Json{{"failures", non_catalytic}, {"cases", count}})};
}

std::vector<Check> suite_couple(const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const double tol = ctx.tolerance("property", 1e-8);
  std::vector<RandProcess> bases{uniform_dephasing(2), weyl_erasure(2)};
  for (const auto& g : generator_family(ctx.count(6), rng)) bases.push_back(g.process);
  const std::size_t inputs = param_size(ctx, "inputs", 5);
  Worst first, second, source;
  for (const RandProcess& p : bases) {
    const RandProcess two = two_copy_catalytic(p, ctx.independence_tol);
    const QChannel phi = p.channel();
    for (std::size_t i = 0; i < inputs; ++i) {
      const DensityMatrix r1 = random_density(p.d_a(), rng), r2 = random_density(p.d_a(), rng);
      const TwoCopyMarginals m = two_copy_marginals(two, r1, r2);
      first.add(trace_norm(m.first.matrix() - apply(phi, r1.matrix())));
      second.add(trace_norm(m.second.matrix() - apply(phi, r2.matrix())));
      source.add(spectrum_gap(spectrum(m.source), spectrum(p.source())));
    }
  }
  return {first.check("first_marginal", tol), second.check("second_marginal", tol),
          source.check("catalyst_spectrum", tol)};
}

std::vector<Check> suite_nondeg(const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  Worst mixture;
  std::size_t not_controlled = 0;
  for (const auto& g : generator_family(ctx.count(24), rng)) {
    const RVector values = hermitian_eigensystem(g.process.source().matrix()).values;
    bool nondegenerate = true;
    for (Eigen::Index k = 0; k + 1 < values.size(); ++k) {
      nondegenerate = nondegenerate && values(k) - values(k + 1) > kDegeneracyGap;
    }
    if (!nondegenerate) continue;
    try {
      const auto terms = classical_decomposition(g.process);
      mixture.add(channel_distance(random_unitary_channel(terms), g.process.channel()));
    } catch (const NotControlled&) {
      ++not_controlled;
    }
  }
  bool degenerate_raised = false;
  try {
    classical_decomposition(uniform_dephasing(2));
  } catch (const DegenerateSource&) {
    degenerate_raised = true;
  }
  return {mixture.check("mixture_reproduces_channel", ctx.tolerance("property", 1e-8)),
          flag("blocks_controlled", not_controlled == 0, Json{{"failures", not_controlled}}),
          flag("uniform_source_rejected", degenerate_raised)};
}

std::vector<Check> suite_bound(const SuiteContext& ctx) {
  const double tight = ctx.tolerance("tight", 1e-6);
  PhaseMatrix example(Eigen::MatrixXd{{0.0, 0.0, 0.0}, {0.0, 0.0, M_PI}},
                      Distribution::from({0.125, 0.375, 0.5}));
  std::vector<std::pair<std::string, RandProcess>> cases{
      {"uniform-dephasing-2", uniform_dephasing(2)},
      {"uniform-dephasing-3", uniform_dephasing(3)},
      {"weyl-erasure-2", weyl_erasure(2)},
      {"classical-dephasing-138", classical_dephasing(example)}};
  std::vector<Check> out;
  for (const auto& [name, p] : cases) {
    const BoundReport r = check_bound(p, true);
    out.push_back(flag(name, r.holds() && std::abs(r.source_min_entropy - r.classical_bound) <= tight,
                       Json{{"c_ea", r.c_ea},
                            {"classical_bound", r.classical_bound},
                            {"source_min_entropy", r.source_min_entropy}}));
  }
  return out;
}

std::vector<Check> suite_lemma_cap(const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const double eq_tol = ctx.tolerance("equality", 2e-3);
  const LemmaCapReport deph =
      lemma_cap_check(QChannel::dephasing(2), {{0.5, QChannel::identity(2)},
                                               {0.5, QChannel::unitary(clock_operator(2))}});
  double equality_gap = 0.0;
  for (const LemmaCapRow& row : deph.rows) equality_gap = std::max(equality_gap, std::abs(row.difference - row.bound));

  const Distribution w = random_distribution(3, rng);
  std::vector<std::pair<double, QChannel>> parts;
  for (std::size_t i = 0; i < 3; ++i) parts.emplace_back(w[i], QChannel::unitary(haar_unitary(2, rng)));
  const QChannel whole = mix(parts);
  const LemmaCapReport random = lemma_cap_check(whole, parts);
  const LemmaCapReport trivial = lemma_cap_check(whole, {{1.0, whole}});
  return {flag("dephasing_decomposition", deph.all_hold && equality_gap <= eq_tol,
               Json{{"report", to_json(deph)}, {"equality_gap", equality_gap}}),
          flag("random_unitary_mixture", random.all_hold, to_json(random)),
          flag("trivial_decomposition", trivial.all_hold, to_json(trivial))};
}

std::vector<Check> suite_conservation(const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const double tol = ctx.tolerance("entropy", 1e-9);
  Worst conservation, environment, system;
  for (const auto& g : generator_family(ctx.count(6), rng)) {
    const RandProcess& p = g.process;
    const std::size_t d = p.d_a(), db = p.d_b();
    const double c_ea = ea_capacity(p.channel()).c_ea;
    const Eigensystem sig = hermitian_eigensystem(p.source().matrix());
    const Dims dims{d, d, db};  // R, A, B
    for (std::size_t i = 0; i < db; ++i) {
      const double pi = sig.values(idx(i));
      if (pi <= 1e-12) continue;
      CVector psi = kron(PureState::maximally_entangled(d).amplitudes(), CVector(sig.vectors.col(idx(i))));
      apply_to_factors(psi, dims, {1, 2}, p.unitary().matrix());
      const double s_r = von_neumann_entropy(reduced_density(psi, dims, {0}));
      const double s_a = von_neumann_entropy(reduced_density(psi, dims, {1}));
      const double s_b = von_neumann_entropy(reduced_density(psi, dims, {2}));
      const double i_ra = s_r + s_a - s_b;  // S(RA) = S(B) for a pure state
      const double i_rb = s_r + s_b - s_a;
      conservation.add(std::abs(i_ra + i_rb - 2.0 * std::log2(static_cast<double>(d))));
      environment.add(std::max(0.0, i_rb + std::log2(pi)));
      system.add(std::max(0.0, i_ra - c_ea + std::log2(pi)));
    }
  }
  Check sum = conservation.check("mutual_information_sum", tol);
  // The capacity-difference inequality fails for generic mixtures, so these excesses are reported only.
  sum.diagnostics["environment_bound_excess"] = environment.value;
  sum.diagnostics["system_bound_excess"] = system.value;
  return {sum};
}

std::vector<Check> suite_phase_solver(const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  Worst defect, off_diagonal, independence;
  std::size_t failures = 0;
  const std::size_t count = ctx.count(10);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t d = 2 + i % 2;
    const std::size_t length = std::uniform_int_distribution<std::size_t>(d + 1, d + 4)(rng);
    const Distribution p = realizable_source(length, d, rng);
    PhaseSolverOptions opts;
    opts.seed = rng();
    try {
      const PhaseMatrix phases = phase_solver(p, d, opts);
      defect.add(phases.defect());
      const RandProcess proc = classical_dephasing(phases);
      independence.add(is_randomness_utilizing(proc, ctx.independence_tol).independence_error);
      const QChannel c = proc.channel();
      for (std::size_t k = 0; k < 3; ++k) {
        const CMatrix out = apply(c, random_density(d, rng).matrix());
        off_diagonal.add((out - CMatrix(out.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
      }
    } catch (const NoConvergence&) {
      ++failures;
    }
  }
  return {flag("solver_converged", failures == 0, Json{{"failures", failures}, {"cases", count}}),
          defect.check("isometry_defect", PhaseSolverOptions{}.tol),
          independence.check("independence", ctx.independence_tol),
          off_diagonal.check("off_diagonal", ctx.tolerance("off_diagonal", 1e-7))};
}

std::vector<Check> suite_birkhoff(const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  Worst reconstruction, invariant;
  std::size_t bad_terms = 0;
  const std::size_t count = ctx.count(50);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t block = 2 + i % 2;
    const std::size_t length = std::uniform_int_distribution<std::size_t>(std::max<std::size_t>(3, block + 1), 8)(rng);
    const Distribution p = feasible(length, block, rng);
    const UniformMixture m = birkhoff_uniformize(p, block, [&](std::span<const double> r) {
      double total = 0.0, top = 0.0;
      for (double x : r) {
        total += x;
        top = std::max(top, x);
      }
      invariant.add(std::max(0.0, top - total / static_cast<double>(block)));
    });
    const std::vector<double> back = m.reconstruct(length);
    double err = 0.0;
    for (std::size_t k = 0; k < length; ++k) err = std::max(err, std::abs(back[k] - p[k]));
    reconstruction.add(err);
    for (const UniformTerm& t : m.terms) {
      if (t.weight < 0.0 || t.support.size() != block) ++bad_terms;
    }
    if (m.terms.size() > length) ++bad_terms;
  }
  return {reconstruction.check("reconstruction", ctx.tolerance("reconstruction", 1e-12)),
          invariant.check("loop_invariant", 1e-12),
          flag("terms_well_formed", bad_terms == 0, Json{{"failures", bad_terms}})};
}

using SuiteFn = std::function<std::vector<Check>(const SuiteContext&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites{
      {"randomness-utilizing", suite_randomness_utilizing},
      {"renyi-monotonicity", [](const SuiteContext& c) { return suite_reports(c, "renyi-monotonicity"); }},
      {"majorization", [](const SuiteContext& c) { return suite_reports(c, "majorization"); }},
      {"dimcat", [](const SuiteContext& c) { return suite_reports(c, "dimcat"); }},
      {"unital", [](const SuiteContext& c) { return suite_reports(c, "unital"); }},
      {"no-secret", suite_no_secret},
      {"no-hiding", suite_no_hiding},
      {"reverse", suite_reverse},
      {"convexity", suite_convexity},
      {"couple", suite_couple},
      {"nondeg", suite_nondeg},
      {"bound", suite_bound},
      {"lemma-cap", suite_lemma_cap},
      {"conservation-law", suite_conservation},
      {"phase-solver", suite_phase_solver},
      {"birkhoff", suite_birkhoff}};
  return suites;
}

}  // namespace

double SuiteContext::tolerance(const std::string& key, double fallback) const {
  const auto it = scenario.tolerances.find(key);
  return it == scenario.tolerances.end() ? fallback : it->second;
}

std::size_t SuiteContext::count(std::size_t fallback) const {
  return scenario.params.value("count", fallback);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : registry()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

std::vector<Check> run_suite(const std::string& theorem, const SuiteContext& ctx) {
  const auto it = registry().find(theorem);
  if (it == registry().end()) throw ParseError("unknown theorem suite '" + theorem + "'");
  return it->second(ctx);
}

}  // namespace catalyst
