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

#include "catalyst/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace catalyst {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

Json number_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? Json("inf") : Json("-inf");
  if (std::isnan(x)) return Json("nan");
  return Json(x);
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  throw ParseError("expected a number");
}

Json matrix_to_json(const CMatrix& m, const Dims& dims) {
  Json out;
  out["dims"] = dims.empty() ? Dims{static_cast<std::size_t>(m.rows())} : dims;
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  out["re_im"] = std::move(entries);
  return out;
}

CMatrix matrix_from_json(const Json& j, Dims* dims) {
  const Dims factors = field<Dims>(j, "dims");
  if (factors.empty()) throw ParseError("matrix dims must not be empty");
  std::size_t n = 1;
  for (std::size_t f : factors) {
    if (f == 0) throw ParseError("matrix dims must be positive");
    n *= f;
  }
  if (!j.contains("re_im")) throw ParseError("missing field 're_im'");
  const Json& entries = j.at("re_im");
  if (!entries.is_array() || entries.size() != n * n) {
    throw ParseError("re_im must hold " + std::to_string(n * n) + " entries");
  }
  CMatrix m(idx(n), idx(n));
  for (std::size_t k = 0; k < n * n; ++k) {
    const Json& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("re_im entries must be [re, im] pairs");
    }
    m(idx(k / n), idx(k % n)) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  if (dims != nullptr) *dims = factors;
  return m;
}

Json to_json(const QChannel& c) {
  return Json{{"in_dim", c.in_dim()},
              {"out_dim", c.out_dim()},
              {"choi", matrix_to_json(c.choi(), Dims{c.out_dim(), c.in_dim()})}};
}

QChannel channel_from_json(const Json& j) {
  const auto in_dim = field<std::size_t>(j, "in_dim");
  const auto out_dim = field<std::size_t>(j, "out_dim");
  if (!j.contains("choi")) throw ParseError("missing field 'choi'");
  return QChannel::from_choi(matrix_from_json(j.at("choi")), in_dim, out_dim);
}

Json to_json(const RandProcess& p) {
  return Json{{"d_a", p.d_a()},
              {"d_b", p.d_b()},
              {"u", matrix_to_json(p.unitary().matrix(), p.unitary().factor_dims())},
              {"sigma", matrix_to_json(p.source().matrix(), p.source().dims())}};
}

RandProcess process_from_json(const Json& j) {
  const auto d_a = field<std::size_t>(j, "d_a");
  const auto d_b = field<std::size_t>(j, "d_b");
  if (!j.contains("u") || !j.contains("sigma")) throw ParseError("process needs 'u' and 'sigma'");
  Dims u_dims, s_dims;
  const CMatrix u = matrix_from_json(j.at("u"), &u_dims);
  const CMatrix s = matrix_from_json(j.at("sigma"), &s_dims);
  if (static_cast<std::size_t>(s.rows()) != d_b || static_cast<std::size_t>(u.rows()) != d_a * d_b) {
    throw ParseError("process dimensions disagree with d_a and d_b");
  }
  if (u_dims.size() < 2) u_dims = Dims{d_a, d_b};
  RandProcess p(UnitaryOp::from(u, u_dims), DensityMatrix::from(s, s_dims));
  if (p.d_a() != d_a) throw ParseError("process d_a disagrees with the unitary");
  return p;
}

Distribution distribution_from_json(const Json& j) {
  if (j.is_object() && !j.contains("probs")) throw ParseError("missing field 'probs'");
  const Json& arr = j.is_object() ? j.at("probs") : j;
  if (!arr.is_array()) throw ParseError("distribution must be an array of numbers");
  std::vector<double> probs;
  for (const Json& x : arr) {
    if (!x.is_number()) throw ParseError("distribution entries must be numbers");
    probs.push_back(x.get<double>());
  }
  return Distribution::from(std::move(probs));
}

Json to_json(const Distribution& p) { return Json(p.probs()); }

Json to_json(const VerificationReport& r) {
  Json table = Json::array();
  for (const EntropyRow& row : r.entropy_table) {
    table.push_back({{"alpha", number_to_json(row.alpha)},
                     {"source_bits", row.source_bits},
                     {"residue_bits", row.residue_bits}});
  }
  return Json{{"residue", matrix_to_json(r.residue.matrix(), r.residue.dims())},
              {"independence_error", r.independence_error},
              {"catalytic", r.catalytic},
              {"spectrum_error", r.spectrum_error},
              {"unital_error", r.unital_error},
              {"majorization_ok", r.majorization_ok},
              {"entropy_table", std::move(table)}};
}

Json to_json(const CapacityReport& r) {
  return Json{{"c_ea", r.c_ea},
              {"optimizer_input", matrix_to_json(r.optimizer_input.matrix())},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"gradient_norm", number_to_json(r.gradient_norm)}};
}

Json to_json(const BoundReport& r) {
  return Json{{"c_ea", r.c_ea},
              {"classical_bound", r.classical_bound},
              {"quantum_bound", r.quantum_bound},
              {"source_min_entropy", r.source_min_entropy},
              {"classical_ok", r.classical_ok},
              {"quantum_ok", r.quantum_ok},
              {"classical_hint", r.classical_hint},
              {"holds", r.holds()}};
}

Json to_json(const LemmaCapReport& r) {
  Json rows = Json::array();
  for (const LemmaCapRow& row : r.rows) {
    rows.push_back({{"weight", row.weight},
                    {"c_ea", row.c_ea},
                    {"difference", row.difference},
                    {"bound", row.bound},
                    {"holds", row.holds}});
  }
  return Json{{"whole_c_ea", r.whole_c_ea}, {"parts", std::move(rows)}, {"all_hold", r.all_hold}};
}

Json to_json(const UniformMixture& m) {
  Json terms = Json::array();
  for (const UniformTerm& t : m.terms) terms.push_back({{"weight", t.weight}, {"support", t.support}});
  return Json{{"block", m.block}, {"terms", std::move(terms)}};
}

Json to_json(const RepeatRunReport& r) {
  return Json{{"round1_factorization", r.round1_factorization},
              {"round1_independence", r.round1_independence},
              {"round2_factorization", r.round2_factorization},
              {"round2_independence", r.round2_independence},
              {"reusable_min_entropy", r.reusable_min_entropy}};
}

Json to_json(const GeneralizedProcess& g) {
  return Json{{"kind", g.kind == GeneralizedTarget::Dephasing ? "dephasing" : "erasure"},
              {"d_a", g.d_a()},
              {"d_b", g.d_b()},
              {"workspace", g.workspace()},
              {"u", matrix_to_json(g.u.matrix(), g.u.factor_dims())},
              {"sigma", matrix_to_json(g.source.matrix())},
              {"leftover", matrix_to_json(g.leftover.matrix())},
              {"mixture", to_json(g.mixture)}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace catalyst
