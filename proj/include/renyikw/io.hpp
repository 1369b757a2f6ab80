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


// JSON encoding of states, ensembles, POVMs and optimizer reports.
//
//   operator:   {"dims":[dA,dB], "matrix":[[[re,im],...],...]}   (row-major)
//   pure state: {"dims":[...], "vector":[[re,im],...]}
//   ensemble:   {"members":[{"p":0.5, "state":{...}}, ...]}
//   POVM:       {"effects":[{...operator...}, ...]}
//
// Malformed documents raise Error(InvalidInput); well-formed documents that
// violate a state invariant raise the error of the corresponding factory.

#ifndef RENYIKW_IO_HPP
#define RENYIKW_IO_HPP

#include <filesystem>
#include <string>

#include "json.hpp"  // vendored nlohmann/json

#include "renyikw/entropy.hpp"
#include "renyikw/measurements.hpp"
#include "renyikw/optimize.hpp"
#include "renyikw/qstate.hpp"

namespace renyikw::io {

using Json = nlohmann::ordered_json;

Json to_json(const ComplexMatrix& m);
Json to_json(const ComplexVector& v);
Json to_json(const DensityMatrix& rho);
Json to_json(const PureState& psi);
Json to_json(const QEnsemble& xi);
Json to_json(const Povm& povm);
Json to_json(const OptReport& report);

ComplexMatrix matrix_from_json(const Json& j);
ComplexVector vector_from_json(const Json& j);
Dims dims_from_json(const Json& j, std::size_t dim);

/// True when the document carries a "vector" (pure state) entry.
bool is_pure(const Json& j);
PureState pure_from_json(const Json& j);
/// Accepts operators and pure states (converted to projectors).
DensityMatrix density_from_json(const Json& j);
QEnsemble ensemble_from_json(const Json& j);
Povm povm_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Shortest round-trip decimal form of a double (at most 17 significant
/// digits), the same text the JSON writer produces.
std::string format_double(double x);

}  // namespace renyikw::io

#endif  // RENYIKW_IO_HPP
