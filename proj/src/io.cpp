// Copyright 2026 The renyikw Authors
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


#include "renyikw/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <sstream>

namespace renyikw::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

std::complex<double> complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    malformed("complex entries must be [re, im] pairs of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Json to_json(const DensityMatrix& rho) { return Json{{"dims", rho.dims()}, {"matrix", to_json(rho.matrix())}}; }

Json to_json(const PureState& psi) { return Json{{"dims", psi.dims()}, {"vector", to_json(psi.amplitudes())}}; }

Json to_json(const QEnsemble& xi) {
  Json members = Json::array();
  for (const auto& m : xi.members()) members.push_back(Json{{"p", m.p}, {"state", to_json(m.state)}});
  return Json{{"members", std::move(members)}};
}

Json to_json(const Povm& povm) {
  Json effects = Json::array();
  for (const auto& e : povm.effects()) {
    effects.push_back(Json{{"dims", Dims{static_cast<std::size_t>(e.rows())}}, {"matrix", to_json(e)}});
  }
  return Json{{"effects", std::move(effects)}, {"rank1", povm.rank1()}};
}

Json to_json(const OptReport& report) {
  return Json{{"best_value", report.best_value},
              {"best_restart", report.best_restart},
              {"evaluations", report.evaluations},
              {"converged", report.converged},
              {"per_restart_values", report.per_restart_values},
              {"best_params", report.best_params}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) malformed("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) malformed("matrix rows must be non-empty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) malformed("matrix rows differ in length");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  if (!m.allFinite()) malformed("matrix has non-finite entries");
  return m;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) malformed("vector must be a non-empty array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  if (!v.allFinite()) malformed("vector has non-finite entries");
  return v;
}

Dims dims_from_json(const Json& j, std::size_t dim) {
  if (j.is_null()) return {dim};
  if (!j.is_array() || j.empty()) malformed("dims must be a non-empty array");
  Dims dims;
  for (const auto& d : j) {
    if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) malformed("dims entries must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  if (product(dims) != dim) throw Error(ErrorKind::DimMismatch, "dims product does not match the data size");
  return dims;
}

bool is_pure(const Json& j) { return j.is_object() && j.contains("vector"); }

PureState pure_from_json(const Json& j) {
  const ComplexVector v = vector_from_json(field(j, "vector"));
  return PureState::from_vector(v, dims_from_json(j.value("dims", Json()), static_cast<std::size_t>(v.size())));
}

DensityMatrix density_from_json(const Json& j) {
  if (is_pure(j)) return pure_from_json(j).density();
  const ComplexMatrix m = matrix_from_json(field(j, "matrix"));
  if (m.rows() != m.cols()) malformed("density matrix must be square");
  return DensityMatrix::from_matrix(m, dims_from_json(j.value("dims", Json()), static_cast<std::size_t>(m.rows())));
}

QEnsemble ensemble_from_json(const Json& j) {
  const Json& members = field(j, "members");
  if (!members.is_array()) malformed("members must be an array");
  std::vector<QEnsemble::Member> out;
  for (const auto& m : members) {
    const Json& p = field(m, "p");
    if (!p.is_number()) malformed("member probability must be a number");
    out.push_back({p.get<double>(), density_from_json(field(m, "state"))});
  }
  return QEnsemble::from_members(std::move(out));
}

Povm povm_from_json(const Json& j) {
  const Json& effects = field(j, "effects");
  if (!effects.is_array()) malformed("effects must be an array");
  std::vector<ComplexMatrix> out;
  for (const auto& e : effects) out.push_back(matrix_from_json(field(e, "matrix")));
  return Povm::from_effects(std::move(out), j.value("rank1", false));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(path.string() + ": " + e.what());
  }
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string format_double(double x) { return Json(x).dump(); }

}  // namespace renyikw::io
