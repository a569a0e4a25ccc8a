// Copyright 2026 The chi2tomo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chi2tomo/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace chi2tomo {

using nlohmann::json;

namespace {

json matrix_json(const Matrix& m, std::optional<int> rank_hint) {
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix_to_json: matrix is not square");
  json j;
  j["dim"] = m.rows();
  j["trace"] = m.trace().real();
  j["rank_hint"] = rank_hint ? json(*rank_hint) : json(nullptr);
  json entries = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) entries.push_back({m(i, k).real(), m(i, k).imag()});
  }
  j["entries"] = std::move(entries);
  return j;
}

Matrix matrix_of(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where, "expected an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw ConfigError(where + ".dim", "missing or not an integer");
  }
  const auto d = j["dim"].get<long long>();
  if (d < 0 || d > kMaxDim) throw ConfigError(where + ".dim", "must lie in [0, 64]");
  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw ConfigError(where + ".entries", "missing or not an array");
  }
  const json& e = j["entries"];
  if (e.size() != static_cast<std::size_t>(d * d)) {
    throw ConfigError(where + ".entries", "expected dim^2 entries");
  }
  Matrix m(d, d);
  for (std::size_t n = 0; n < e.size(); ++n) {
    const json& z = e[n];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
      throw ConfigError(where + ".entries[" + std::to_string(n) + "]", "expected [re, im]");
    }
    m(static_cast<Index>(n) / d, static_cast<Index>(n) % d) =
        Complex(z[0].get<double>(), z[1].get<double>());
  }
  return m;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("json", e.what());
  }
}

}  // namespace

std::string matrix_to_json(const Matrix& m, std::optional<int> rank_hint) {
  return matrix_json(m, rank_hint).dump(2);
}

Matrix matrix_from_json(const std::string& text) { return matrix_of(parse(text), "matrix"); }

std::string state_to_json(const DensityMatrix& rho) {
  return matrix_to_json(rho.matrix(), rho.rank_hint());
}

DensityMatrix state_from_json(const std::string& text) {
  json j = parse(text);
  Matrix m = matrix_of(j, "state");
  std::optional<int> hint;
  if (j.contains("rank_hint") && !j["rank_hint"].is_null()) {
    if (!j["rank_hint"].is_number_integer()) throw ConfigError("state.rank_hint", "not an integer");
    hint = j["rank_hint"].get<int>();
  }
  return DensityMatrix::from_matrix(m, 1.0, hint);
}

std::string povm_to_json(const Povm& povm) {
  json j;
  j["dim"] = povm.dim();
  json el = json::array();
  for (std::size_t k = 0; k < povm.size(); ++k) {
    el.push_back({{"label", povm.labels()[k]}, {"matrix", matrix_json(povm.elements()[k], {})}});
  }
  j["elements"] = std::move(el);
  return j.dump(2);
}

Povm povm_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.contains("elements") || !j["elements"].is_array()) {
    throw ConfigError("povm.elements", "missing or not an array");
  }
  std::vector<Matrix> el;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < j["elements"].size(); ++k) {
    const json& e = j["elements"][k];
    const std::string where = "povm.elements[" + std::to_string(k) + "]";
    if (!e.contains("label") || !e["label"].is_string()) {
      throw ConfigError(where + ".label", "missing or not a string");
    }
    if (!e.contains("matrix")) throw ConfigError(where + ".matrix", "missing");
    labels.push_back(e["label"].get<std::string>());
    el.push_back(matrix_of(e["matrix"], where + ".matrix"));
  }
  return Povm(std::move(el), std::move(labels));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace chi2tomo
