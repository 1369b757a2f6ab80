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


// Shared fixtures for the unit tests: named states, random ensembles and
// small comparison helpers.

#ifndef RENYIKW_TESTS_SUPPORT_HPP
#define RENYIKW_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>

#include "renyikw/entropy.hpp"
#include "renyikw/qstate.hpp"

namespace renyikw::testing {

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline ComplexVector ket(std::initializer_list<std::complex<double>> amps) {
  ComplexVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const auto& a : amps) v(i++) = a;
  return v;
}

inline PureState bell() {
  const double h = 1.0 / std::sqrt(2.0);
  return PureState::from_vector(ket({h, 0, 0, h}), {2, 2});
}

/// sqrt(0.9)|00> + sqrt(0.1)|11>
inline PureState skewed_bell() {
  return PureState::from_vector(ket({std::sqrt(0.9), 0, 0, std::sqrt(0.1)}), {2, 2});
}

inline DensityMatrix diag_state(std::vector<double> d, Dims dims = {}) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return DensityMatrix::from_matrix(m, std::move(dims));
}

inline ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  const ComplexMatrix g = ginibre<double>(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d), rng);
  return 0.5 * (g + g.adjoint());
}

inline std::vector<double> random_weights(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = u(rng));
  for (auto& x : w) x /= total;
  return w;
}

/// Ensemble of `members` Ginibre states of random rank on a d-dimensional space.
inline QEnsemble random_ensemble(std::size_t d, std::size_t members, Rng& rng) {
  const auto w = random_weights(members, rng);
  std::vector<QEnsemble::Member> out;
  for (std::size_t k = 0; k < members; ++k) {
    const std::size_t rank = 1 + static_cast<std::size_t>(rng() % d);
    out.push_back({w[k], random_mixed<double>({d}, rank, rng)});
  }
  return QEnsemble::from_members(std::move(out));
}

/// Random product state rho_A (x) rho_B.
inline DensityMatrix random_product(std::size_t da, std::size_t db, Rng& rng) {
  const auto a = random_mixed<double>({da}, 1 + static_cast<std::size_t>(rng() % da), rng);
  const auto b = random_mixed<double>({db}, 1 + static_cast<std::size_t>(rng() % db), rng);
  return tensor(a, b);
}

/// w a + (1 - w) b, keeping the dims of a.
inline DensityMatrix mix(double w, const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_matrix(w * a.matrix() + (1.0 - w) * b.matrix(), a.dims());
}

inline std::complex<double> trace_of(const ComplexMatrix& m) { return m.trace(); }

}  // namespace renyikw::testing

#endif  // RENYIKW_TESTS_SUPPORT_HPP
