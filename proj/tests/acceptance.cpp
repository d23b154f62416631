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


// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "catalyst/capacity.hpp"
#include "catalyst/constructions.hpp"
#include "catalyst/errors.hpp"
#include "catalyst/generators.hpp"
#include "catalyst/random.hpp"
#include "catalyst/randproc.hpp"

namespace catalyst {
namespace {

// Tolerances pinned per criterion.
constexpr double kAc1Independence = 1e-9;
constexpr double kAc2Recovery = 1e-8;
constexpr double kAc2MarginalGap = 0.1;
constexpr double kAc3Spectrum = 1e-8;
constexpr double kAc3Renyi = 1e-8;
constexpr double kAc4Unital = 1e-8;
constexpr double kAc5Unitary = 1e-8;
constexpr double kAc5Mixture = 1e-8;
constexpr double kAc6Capacity = 1e-3;
constexpr double kAc6Saturation = 1e-9;
constexpr double kAc7Equality = 2e-3;
constexpr double kAc8OffDiagonal = 1e-10;
constexpr double kAc9Reconstruction = 1e-12;
constexpr double kAc10Generalized = 1e-8;
constexpr double kAc11TwoCopy = 1e-8;
constexpr double kAc12Concavity = 1e-9;
constexpr double kAc12Gradient = 1e-4;
constexpr double kAc12Step = 1e-5;

constexpr std::uint64_t kSeed = 20240531;
constexpr std::size_t kFamilySize = 204;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

double spectrum_gap(const DensityMatrix& a, const DensityMatrix& b) {
  const std::vector<double> x = spectrum(a).sorted_descending();
  const std::vector<double> y = spectrum(b).sorted_descending();
  if (x.size() != y.size()) return kInfinity;
  double gap = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) gap = std::max(gap, std::abs(x[i] - y[i]));
  return gap;
}

CMatrix controlled(const std::vector<CMatrix>& blocks) {
  const std::size_t d = static_cast<std::size_t>(blocks.front().rows());
  const std::size_t db = blocks.size();
  CMatrix u = CMatrix::Zero(idx(d * db), idx(d * db));
  for (std::size_t m = 0; m < db; ++m) {
    CMatrix proj = CMatrix::Zero(idx(db), idx(db));
    proj(idx(m), idx(m)) = 1.0;
    u += kron(blocks[m], proj);
  }
  return u;
}

double max_off_diagonal(const CMatrix& m) {
  return (m - CMatrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
}

const std::vector<GeneratedProcess>& family() {
  static const std::vector<GeneratedProcess> f = [] {
    Rng rng(kSeed);
    return generator_family(kFamilySize, rng);
  }();
  return f;
}

Outcome ac1() {
  Rng rng(kSeed + 1);
  std::vector<RandProcess> processes{uniform_dephasing(2), uniform_dephasing(3), uniform_dephasing(4),
                                     weyl_erasure(2), weyl_erasure(3)};
  std::size_t sources = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    const std::size_t d = 2 + i % 2;
    const std::size_t length = d + 1 + i % 4;
    PhaseSolverOptions opts;
    opts.seed = rng();
    try {
      processes.push_back(classical_dephasing_from_source(realizable_source(length, d, rng), d, opts));
      ++sources;
    } catch (const Error& e) {
      return {false, std::string("phase solver failed: ") + e.what()};
    }
  }
  for (int i = 0; i < 50; ++i) {
    const std::size_t da = 2 + static_cast<std::size_t>(i % 2);
    const std::size_t db = 2 + static_cast<std::size_t>(i % 3);
    processes.push_back(random_controlled_process(da, db, rng));
  }
  double worst = 0.0;
  bool all = true;
  for (const RandProcess& p : processes) {
    const IndependenceCheck c = is_randomness_utilizing(p, kAc1Independence);
    all = all && c.randomness_utilizing;
    worst = std::max(worst, c.independence_error);
  }
  return {all && worst <= kAc1Independence && sources == 20,
          fmt("%.0f processes, worst independence error %.2e", double(processes.size()), worst)};
}

Outcome ac2() {
  Rng rng(kSeed + 2);
  std::vector<RandProcess> processes{uniform_dephasing(2), weyl_erasure(2), weyl_erasure(3)};
  for (std::size_t i = 0; i < 24; ++i) processes.push_back(family()[i].process);
  double worst = 0.0;
  for (const RandProcess& p : processes) {
    const UnitaryOp v = recovery_unitary(p);
    for (int k = 0; k < 50; ++k) {
      const DensityMatrix rho = random_density(p.d_a(), rng);
      worst = std::max(worst, 0.5 * trace_norm(recover(p, v, rho).matrix() - rho.matrix()));
    }
  }
  // Neither marginal of the Weyl erasure output reveals rho.
  const RandProcess erasure = weyl_erasure(2);
  const QChannel system = erasure.channel();
  const QChannel environment = erasure.complementary_channel();
  double min_system_gap = kInfinity, environment_spread = 0.0;
  const CMatrix reference = catalyst::apply(environment, random_density(2, rng).matrix());
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho = DensityMatrix::pure(random_pure(2, rng));
    min_system_gap = std::min(min_system_gap, 0.5 * trace_norm(catalyst::apply(system, rho).matrix() - rho.matrix()));
    environment_spread = std::max(environment_spread,
                                  trace_norm(catalyst::apply(environment, rho.matrix()) - reference));
  }
  const bool ok = worst <= kAc2Recovery && min_system_gap > kAc2MarginalGap && environment_spread <= 1e-10;
  return {ok, fmt("worst recovery %.2e, min system-marginal distance %.3f, residue spread %.1e", worst,
                  min_system_gap, environment_spread)};
}

Outcome ac3() {
  double gap = 0.0, renyi = 0.0;
  std::size_t rows = 0;
  for (const GeneratedProcess& g : family()) {
    const VerificationReport r = verify(g.process);
    gap = std::max(gap, spectrum_gap(g.process.source(), r.residue));
    for (const EntropyRow& row : r.entropy_table) {
      renyi = std::max(renyi, row.source_bits - row.residue_bits);
      ++rows;
    }
  }
  return {family().size() >= 200 && gap <= kAc3Spectrum && renyi <= kAc3Renyi && rows == 5 * family().size(),
          fmt("%.0f processes, spectrum gap %.2e, Renyi excess %.2e", double(family().size()), gap, renyi)};
}

Outcome ac4() {
  double worst = 0.0;
  std::size_t count = 0;
  auto check = [&](const RandProcess& p) {
    const QChannel c = p.channel();
    if (c.in_dim() != c.out_dim()) return;
    const std::size_t d = c.in_dim();
    const CMatrix mixed = CMatrix::Identity(idx(d), idx(d)) / static_cast<double>(d);
    worst = std::max(worst, trace_norm(catalyst::apply(c, mixed) - mixed));
    ++count;
  };
  for (const GeneratedProcess& g : family()) check(g.process);
  for (const RandProcess& p : {uniform_dephasing(2), uniform_dephasing(3), weyl_erasure(2), weyl_erasure(3)}) check(p);
  return {worst <= kAc4Unital, fmt("%.0f processes, worst |Phi(I/d) - I/d|_1 = %.2e", double(count), worst)};
}

Outcome ac5() {
  double unitary = 0.0, mixture = 0.0;
  std::size_t count = 0;
  for (const GeneratedProcess& g : family()) {
    const std::vector<double> s = spectrum(g.process.source()).sorted_descending();
    bool non_degenerate = true;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) non_degenerate = non_degenerate && s[i] - s[i + 1] > kDegeneracyGap;
    if (!non_degenerate || !verify(g.process).catalytic) continue;
    try {
      const std::vector<RandomUnitaryTerm> terms = classical_decomposition(g.process);
      for (const RandomUnitaryTerm& t : terms) {
        const auto n = t.unitary.rows();
        unitary = std::max(unitary, (t.unitary.adjoint() * t.unitary - CMatrix::Identity(n, n)).norm());
      }
      mixture = std::max(mixture, channel_distance(random_unitary_channel(terms), g.process.channel()));
      ++count;
    } catch (const Error& e) {
      return {false, std::string(g.family) + ": " + e.what()};
    }
  }
  bool degenerate_rejected = false;
  try {
    (void)classical_decomposition(uniform_dephasing(2));
  } catch (const DegenerateSource&) {
    degenerate_rejected = true;
  }
  return {count > 0 && unitary <= kAc5Unitary && mixture <= kAc5Mixture && degenerate_rejected,
          fmt("%.0f non-degenerate processes, unitarity %.2e, mixture error %.2e", double(count), unitary, mixture) +
              (degenerate_rejected ? ", uniform source rejected" : ", uniform source NOT rejected")};
}

Outcome ac6() {
  const double deph = ea_capacity(QChannel::dephasing(2)).c_ea;
  const double erase = ea_capacity(QChannel::erasure(2)).c_ea;
  const double ident = ea_capacity(QChannel::identity(2)).c_ea;
  bool ok = std::abs(deph - 1.0) <= kAc6Capacity && std::abs(erase) <= kAc6Capacity &&
            std::abs(ident - 2.0) <= kAc6Capacity;
  ok = ok && min_entropy_bounds(1.0, 2) == std::make_pair(1.0, 0.5) &&
       min_entropy_bounds(0.0, 2) == std::make_pair(2.0, 1.0);
  const BoundReport bd = check_bound(uniform_dephasing(2), true);
  const BoundReport be = check_bound(weyl_erasure(2), true);
  const double sat_d = std::abs(bd.source_min_entropy - bd.classical_bound);
  const double sat_e = std::abs(be.source_min_entropy - be.classical_bound);
  ok = ok && bd.holds() && be.holds() && sat_d <= kAc6Saturation && sat_e <= kAc6Saturation;
  return {ok, fmt("C_EA dephasing/erasure/identity = %.6f/%.6f/%.6f", deph, erase, ident) +
                  fmt(", saturation gaps %.1e/%.1e", sat_d, sat_e)};
}

Outcome ac7() {
  CMatrix z = CMatrix::Identity(2, 2);
  z(1, 1) = -1.0;
  const LemmaCapReport r =
      lemma_cap_check(QChannel::dephasing(2), {{0.5, QChannel::identity(2)}, {0.5, QChannel::unitary(z)}});
  double gap = 0.0;
  for (const LemmaCapRow& row : r.rows) gap = std::max(gap, std::abs(row.difference - row.bound));
  return {r.all_hold && gap <= kAc7Equality, fmt("C_EA whole %.6f, max |difference - bound| %.2e", r.whole_c_ea, gap)};
}

Outcome ac8() {
  const Distribution p = Distribution::from({0.125, 0.375, 0.5});
  CMatrix z = CMatrix::Identity(2, 2);
  z(1, 1) = -1.0;
  const RandProcess proc(UnitaryOp::from(controlled({CMatrix::Identity(2, 2), CMatrix::Identity(2, 2), z}), Dims{2, 3}),
                         DensityMatrix::diagonal(p));
  Rng rng(kSeed + 8);
  double off = 0.0;
  const QChannel c = proc.channel();
  for (int k = 0; k < 50; ++k) off = std::max(off, max_off_diagonal(catalyst::apply(c, random_density(2, rng).matrix())));
  const VerificationReport r = verify(proc);
  const double s_min = renyi_entropy(proc.source(), kInfinity).bits;
  const BoundReport b = check_bound(proc, true);
  // The solver reaches the same process from the source alone.
  PhaseSolverOptions opts;
  opts.tol = 1e-12;
  const QChannel solved = classical_dephasing_from_source(p, 2, opts).channel();
  const double solved_distance = channel_distance(solved, QChannel::dephasing(2));
  const bool ok = off <= kAc8OffDiagonal && r.catalytic && r.independence_error <= kAc1Independence &&
                  s_min == 1.0 && s_min == std::log2(2.0) && b.holds() &&
                  std::abs(s_min - b.classical_bound) <= kAc6Saturation && solved_distance <= kAc8OffDiagonal;
  return {ok, fmt("off-diagonal %.1e, S_inf = %.17g, solver distance %.1e", off, s_min, solved_distance)};
}

Outcome ac9() {
  Rng rng(kSeed + 9);
  double err = 0.0, min_weight = kInfinity;
  for (int i = 0; i < 50; ++i) {
    const std::size_t block = 2 + static_cast<std::size_t>(i % 2);
    const std::size_t length = 3 + static_cast<std::size_t>(i % 6);
    Distribution p = random_distribution(length, rng);
    while (p.max() > 1.0 / static_cast<double>(block)) p = random_distribution(length, rng);
    const UniformMixture mix = birkhoff_uniformize(p, block);
    const std::vector<double> r = mix.reconstruct(length);
    for (std::size_t k = 0; k < length; ++k) err = std::max(err, std::abs(r[k] - p[k]));
    for (const UniformTerm& t : mix.terms) min_weight = std::min(min_weight, t.weight);
  }
  const UniformMixture worked = birkhoff_uniformize(Distribution::from({0.125, 0.375, 0.5}), 2);
  const std::vector<double> wr = worked.reconstruct(3);
  const bool shape = worked.terms.size() == 2 && std::abs(worked.terms[0].weight - 0.75) <= kAc9Reconstruction &&
                     worked.terms[0].support == std::vector<std::size_t>{1, 2} &&
                     std::abs(worked.terms[1].weight - 0.25) <= kAc9Reconstruction &&
                     worked.terms[1].support == std::vector<std::size_t>{0, 2} &&
                     std::abs(wr[0] - 0.125) + std::abs(wr[1] - 0.375) + std::abs(wr[2] - 0.5) <= kAc9Reconstruction;
  return {err <= kAc9Reconstruction && min_weight >= 0.0 && shape,
          fmt("reconstruction error %.1e, min weight %.2e", err, min_weight) +
              (shape ? ", worked decomposition 3/4 u{2,3} + 1/4 u{1,3}" : ", worked decomposition wrong")};
}

Outcome ac10() {
  const GeneralizedProcess deph = generalized_dephasing(Distribution::from({0.125, 0.375, 0.5}), 2);
  const RepeatRunReport rd = repeat_run(deph, kSeed + 10, 20);
  const GeneralizedProcess erase = generalized_erasure(Distribution::from({0.125, 0.125, 0.125, 0.125, 0.25, 0.25}), 2);
  const RepeatRunReport re = repeat_run(erase, kSeed + 11, 20);
  const double source_bits = renyi_entropy(erase.source, kInfinity).bits;
  auto worst = [](const RepeatRunReport& r) {
    return std::max({r.round1_factorization, r.round1_independence, r.round2_factorization, r.round2_independence});
  };
  const bool ok = worst(rd) <= kAc10Generalized && worst(re) <= kAc10Generalized &&
                  std::abs(source_bits - 2.0) <= 1e-12;
  return {ok, fmt("dephasing worst %.1e, erasure worst %.1e (source S_inf %.3f)", worst(rd), worst(re), source_bits)};
}

Outcome ac11() {
  Rng rng(kSeed + 11);
  double marginal = 0.0, gap = 0.0;
  for (const RandProcess& base : {uniform_dephasing(2), weyl_erasure(2)}) {
    const RandProcess composite = two_copy_catalytic(base);
    const QChannel phi = base.channel();
    for (int k = 0; k < 20; ++k) {
      const DensityMatrix r1 = random_density(2, rng), r2 = random_density(2, rng);
      const TwoCopyMarginals m = two_copy_marginals(composite, r1, r2);
      marginal = std::max(marginal, trace_norm(m.first.matrix() - catalyst::apply(phi, r1).matrix()));
      marginal = std::max(marginal, trace_norm(m.second.matrix() - catalyst::apply(phi, r2).matrix()));
      gap = std::max(gap, spectrum_gap(m.source, base.source()));
    }
  }
  return {marginal <= kAc11TwoCopy && gap <= kAc11TwoCopy, fmt("marginal error %.1e, catalyst spectrum gap %.1e", marginal, gap)};
}

Outcome ac12() {
  Rng rng(kSeed + 12);
  std::vector<QChannel> channels{QChannel::dephasing(2), QChannel::erasure(2), QChannel::identity(3)};
  for (int i = 0; i < 6; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 2);
    channels.push_back(channel_from_stinespring(UnitaryOp::from(haar_unitary(2 * d, rng), Dims{d, 2}),
                                                random_density(2, rng), Traced::B));
  }
  for (const GeneratedProcess& g : family()) {
    if (channels.size() >= 15) break;
    channels.push_back(g.process.channel());
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;
  double concavity = 0.0, gradient = 0.0;
  for (const QChannel& c : channels) {
    const std::size_t d = c.in_dim();
    const CMatrix mixed = CMatrix::Identity(idx(d), idx(d)) / static_cast<double>(d);
    for (int k = 0; k < 10; ++k) {
      const CMatrix r1 = random_density(d, rng).matrix(), r2 = random_density(d, rng).matrix();
      const double lambda = unit(rng);
      const double lhs = ea_objective(c, lambda * r1 + (1.0 - lambda) * r2);
      concavity = std::max(concavity, lambda * ea_objective(c, r1) + (1.0 - lambda) * ea_objective(c, r2) - lhs);

      const CMatrix rho = 0.5 * random_density(d, rng).matrix() + 0.5 * mixed;
      CMatrix h(idx(d), idx(d));
      for (Eigen::Index a = 0; a < h.rows(); ++a) {
        for (Eigen::Index b = 0; b < h.cols(); ++b) h(a, b) = Complex(gauss(rng), gauss(rng));
      }
      h = 0.5 * (h + h.adjoint());
      h -= h.trace() / static_cast<double>(d) * CMatrix::Identity(idx(d), idx(d));
      h /= h.norm();
      const double numeric =
          (ea_objective(c, rho + kAc12Step * h) - ea_objective(c, rho - kAc12Step * h)) / (2.0 * kAc12Step);
      const double analytic = (ea_gradient(c, rho) * h).trace().real();
      gradient = std::max(gradient, std::abs(numeric - analytic) / std::max(1.0, std::abs(analytic)));
    }
  }
  return {concavity <= kAc12Concavity && gradient <= kAc12Gradient,
          fmt("%.0f channels, concavity violation %.1e, gradient relative error %.1e", double(channels.size()),
              std::max(0.0, concavity), gradient)};
}

}  // namespace
}  // namespace catalyst

int main() {
  using catalyst::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 randomness-utilizing verification of all constructions", catalyst::ac1},
      {"AC2 no-secret recovery and marginal hiding", catalyst::ac2},
      {"AC3 equal spectra and Renyi monotonicity over the generator family", catalyst::ac3},
      {"AC4 unitality of dimension-preserving processes", catalyst::ac4},
      {"AC5 classical decomposition of non-degenerate catalytic processes", catalyst::ac5},
      {"AC6 capacity values and min-entropy bounds", catalyst::ac6},
      {"AC7 capacity-difference inequality for qubit dephasing", catalyst::ac7},
      {"AC8 worked (1/8, 3/8, 1/2) dephasing example", catalyst::ac8},
      {"AC9 Birkhoff uniformization", catalyst::ac9},
      {"AC10 generalized dephasing and erasure over two rounds", catalyst::ac10},
      {"AC11 two-copy catalysis", catalyst::ac11},
      {"AC12 capacity optimizer soundness", catalyst::ac12},
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.passed) ++failures;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failures,
              criteria.size(), seconds);
  return failures == 0 ? 0 : 1;
}
