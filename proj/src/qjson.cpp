// Copyright 2026 The randcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "randcert/qjson.hpp"

namespace randcert {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

SubsystemShape shape_from(const json& j) {
  std::vector<std::size_t> dims = j.at("dims").get<std::vector<std::size_t>>();
  std::vector<std::string> labels;
  if (j.contains("labels"))
    labels = j.at("labels").get<std::vector<std::string>>();
  return SubsystemShape(std::move(dims), std::move(labels));
}

void check_type(const json& j, const char* type) {
  if (!j.is_object() || j.value("type", std::string()) != type)
    throw ContractError(std::string("expected JSON object of type ") + type);
}

}  // namespace

ordered_json matrix_entries_json(const CMat& m) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      out.push_back({m(i, k).real(), m(i, k).imag()});
  return out;
}

CMat matrix_from_entries_json(const json& entries, std::size_t rows,
                              std::size_t cols) {
  if (!entries.is_array() || entries.size() != rows * cols)
    throw DimensionError("entries length does not match dims");
  CMat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k, ++n) {
      const auto& e = entries.at(n);
      m(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

ordered_json vector_entries_json(const CVec& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back({v(i).real(), v(i).imag()});
  return out;
}

CVec vector_from_entries_json(const json& entries) {
  CVec v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        Complex(entries[i].at(0).get<double>(), entries[i].at(1).get<double>());
  return v;
}

ordered_json to_json(const QState& state) {
  ordered_json j;
  j["schema"] = 1;
  j["type"] = "state";
  j["dims"] = state.shape().dims;
  j["labels"] = state.shape().names;
  j["entries"] = matrix_entries_json(state.rho());
  return j;
}

QState state_from_json(const json& j) {
  check_type(j, "state");
  SubsystemShape shape = shape_from(j);
  const std::size_t n = shape.total();
  return QState(matrix_from_entries_json(j.at("entries"), n, n),
                std::move(shape));
}

ordered_json to_json(const Povm& povm, const SubsystemShape& shape) {
  if (shape.total() != povm.dim())
    throw DimensionError("to_json: shape does not match POVM dimension");
  ordered_json j;
  j["schema"] = 1;
  j["type"] = "povm";
  j["dims"] = shape.dims;
  j["labels"] = shape.names;
  ordered_json els = ordered_json::array();
  for (const auto& e : povm.elements()) els.push_back(matrix_entries_json(e));
  j["elements"] = std::move(els);
  if (povm.kets()) {
    ordered_json kets = ordered_json::array();
    for (const auto& k : *povm.kets()) kets.push_back(vector_entries_json(k));
    j["kets"] = std::move(kets);
  }
  return j;
}

ordered_json to_json(const Povm& povm) {
  return to_json(povm, SubsystemShape({povm.dim()}));
}

Povm povm_from_json(const json& j, SubsystemShape* shape) {
  check_type(j, "povm");
  SubsystemShape s = shape_from(j);
  const std::size_t n = s.total();
  Povm p;
  if (j.contains("kets")) {
    // Kets are authoritative; elements are rebuilt from them and compared.
    std::vector<CVec> kets;
    for (const auto& k : j.at("kets")) kets.push_back(vector_from_entries_json(k));
    p = Povm::from_kets(std::move(kets));
    const auto& els = j.at("elements");
    if (els.size() != p.size())
      throw DimensionError("povm JSON: kets and elements differ in count");
    std::vector<CMat> stored;
    for (const auto& e : els) stored.push_back(matrix_from_entries_json(e, n, n));
    for (std::size_t a = 0; a < p.size(); ++a)
      if (max_abs(stored[a] - p[a]) > 1e-10)
        throw ContractError("povm JSON: element does not match its ket");
  } else {
    std::vector<CMat> els;
    for (const auto& e : j.at("elements"))
      els.push_back(matrix_from_entries_json(e, n, n));
    p = Povm::from_elements(std::move(els));
  }
  if (p.dim() != n) throw DimensionError("povm JSON: dims mismatch");
  if (shape) *shape = std::move(s);
  return p;
}

}  // namespace randcert
