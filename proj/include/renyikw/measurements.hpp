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

#ifndef RENYIKW_MEASUREMENTS_HPP
#define RENYIKW_MEASUREMENTS_HPP

#include <cmath>
#include <span>
#include <vector>

#include "renyikw/entropy.hpp"
#include "renyikw/qstate.hpp"

namespace renyikw {

namespace tol {
inline constexpr double kPovm = 1e-9;
inline constexpr double kOutcomePrune = 1e-12;
inline constexpr double kNormalizer = 1e-12;
}  // namespace tol

/// Which factor of a bipartite state is measured.
enum class Side { A, B };

template <typename Real = double>
class BasicPovm {
 public:
  static BasicPovm from_effects(std::vector<CMatrix<Real>> effects, bool rank1 = false) {
    if (effects.empty()) throw Error(ErrorKind::InvalidInput, "POVM has no effects");
    const auto d = effects.front().rows();
    CMatrix<Real> sum = CMatrix<Real>::Zero(d, d);
    for (const auto& e : effects) {
      if (e.rows() != d || e.cols() != d) throw Error(ErrorKind::DimMismatch, "POVM effects differ in shape");
      if (hermitian_deviation(e) > Real(tol::kPovm)) throw Error(ErrorKind::NonHermitian, "POVM effect not Hermitian");
      const RVector<Real> ev = eigenvalues_hermitian<Real>(e);
      if (ev.minCoeff() < -Real(tol::kPovm)) throw Error(ErrorKind::InvalidInput, "POVM effect not PSD");
      if (rank1 && ev.size() > 1 && ev(1) > Real(tol::kPovm)) {
        throw Error(ErrorKind::InvalidInput, "effect flagged rank-1 has rank above 1");
      }
      sum += e;
    }
    if ((sum - CMatrix<Real>::Identity(d, d)).cwiseAbs().maxCoeff() > Real(tol::kPovm)) {
      throw Error(ErrorKind::InvalidInput, "POVM effects do not sum to identity");
    }
    return BasicPovm(std::move(effects), rank1);
  }

  /// Projective measurement onto the columns of a unitary.
  static BasicPovm projective(const CMatrix<Real>& basis) {
    std::vector<CMatrix<Real>> effects;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) effects.push_back(basis.col(k) * basis.col(k).adjoint());
    return from_effects(std::move(effects), true);
  }

  const std::vector<CMatrix<Real>>& effects() const noexcept { return effects_; }
  std::size_t size() const noexcept { return effects_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(effects_.front().rows()); }
  bool rank1() const noexcept { return rank1_; }

 private:
  BasicPovm(std::vector<CMatrix<Real>> effects, bool rank1) : effects_(std::move(effects)), rank1_(rank1) {}

  std::vector<CMatrix<Real>> effects_;
  bool rank1_;
};

using Povm = BasicPovm<double>;

// ---------------------------------------------------------------------------
// Isometry parametrization
//
// An n x d isometry V is built as G_1 G_2 ... G_m E_d diag(exp(i chi)), where
// E_d holds the first d columns of the identity and each G acts on a row pair
// (k, j), k < d, j > k, as [[c, -e^{-i phi} s], [e^{i phi} s, c]]. The angle
// vector stores (theta, phi) per rotation in (k, j) lexicographic order, then
// the d phases chi; 2nd - d^2 reals in total.

inline std::size_t isometry_param_count(std::size_t n_outcomes, std::size_t dim) {
  return 2 * n_outcomes * dim - dim * dim;
}

struct IsometryParams {
  std::size_t n_outcomes = 0;
  std::size_t dim = 0;
  std::vector<double> angles;

  static IsometryParams identity(std::size_t n_outcomes, std::size_t dim) {
    return {n_outcomes, dim, std::vector<double>(isometry_param_count(n_outcomes, dim), 0.0)};
  }
};

template <typename Real = double>
CMatrix<Real> isometry_from_angles(std::size_t n, std::size_t d, std::span<const double> angles) {
  if (n < d) throw Error(ErrorKind::TooFewOutcomes, "isometry needs n_outcomes >= dim");
  if (angles.size() != isometry_param_count(n, d)) throw Error(ErrorKind::DimMismatch, "wrong isometry parameter count");
  using C = std::complex<Real>;
  const auto ni = static_cast<Eigen::Index>(n), di = static_cast<Eigen::Index>(d);
  CMatrix<Real> v = CMatrix<Real>::Zero(ni, di);
  const std::size_t phase_offset = angles.size() - d;
  for (Eigen::Index k = 0; k < di; ++k) v(k, k) = std::polar(Real(1), Real(angles[phase_offset + k]));
  // rotations applied right-to-left: the last listed pair acts first
  std::size_t idx = phase_offset;
  for (Eigen::Index k = di; k-- > 0;) {
    for (Eigen::Index j = ni; j-- > k + 1;) {
      idx -= 2;
      const Real c = std::cos(Real(angles[idx])), s = std::sin(Real(angles[idx]));
      const Real pr = s * std::cos(Real(angles[idx + 1])), pi = s * std::sin(Real(angles[idx + 1]));
      for (Eigen::Index col = 0; col < di; ++col) {
        const C rk = v(k, col), rj = v(j, col);
        // row k: c rk - conj(ph) s rj ; row j: ph s rk + c rj
        v(k, col) = C(c * rk.real() - (pr * rj.real() + pi * rj.imag()), c * rk.imag() - (pr * rj.imag() - pi * rj.real()));
        v(j, col) = C(pr * rk.real() - pi * rk.imag() + c * rj.real(), pr * rk.imag() + pi * rk.real() + c * rj.imag());
      }
    }
  }
  return v;
}

template <typename Real = double>
CMatrix<Real> isometry_from_params(const IsometryParams& params) {
  return isometry_from_angles<Real>(params.n_outcomes, params.dim, params.angles);
}

/// Re-expresses n_from x d isometry angles as n_to x d angles describing the
/// same isometry padded with zero rows (the added rotations are identities).
inline std::vector<double> lift_isometry_angles(std::size_t n_from, std::size_t n_to, std::size_t d,
                                                std::span<const double> angles) {
  if (n_to < n_from || angles.size() != isometry_param_count(n_from, d)) {
    throw Error(ErrorKind::DimMismatch, "cannot lift isometry parameters");
  }
  std::vector<double> out;
  out.reserve(isometry_param_count(n_to, d));
  std::size_t idx = 0;
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = k + 1; j < n_from; ++j, idx += 2) {
      out.push_back(angles[idx]);
      out.push_back(angles[idx + 1]);
    }
    for (std::size_t j = std::max(n_from, k + 1); j < n_to; ++j) {
      out.push_back(0.0);
      out.push_back(0.0);
    }
  }
  out.insert(out.end(), angles.begin() + static_cast<std::ptrdiff_t>(idx), angles.end());
  return out;
}

/// Rank-1 POVM E_x = V^dagger |x><x| V.
template <typename Real = double>
BasicPovm<Real> povm_from_isometry(const IsometryParams& params) {
  const CMatrix<Real> v = isometry_from_params<Real>(params);
  std::vector<CMatrix<Real>> effects;
  for (Eigen::Index x = 0; x < v.rows(); ++x) {
    const CVector<Real> col = v.row(x).adjoint();
    effects.push_back(col * col.adjoint());
  }
  return BasicPovm<Real>::from_effects(std::move(effects), true);
}

/// Effects S^{-1/2} B_x^dagger B_x S^{-1/2} with S = sum_x B_x^dagger B_x.
template <typename Real = double>
std::vector<CMatrix<Real>> effects_from_blocks(const std::vector<CMatrix<Real>>& blocks) {
  if (blocks.empty()) throw Error(ErrorKind::InvalidInput, "no blocks");
  const auto d = blocks.front().cols();
  CMatrix<Real> s = CMatrix<Real>::Zero(d, d);
  std::vector<CMatrix<Real>> grams;
  for (const auto& b : blocks) {
    if (b.cols() != d) throw Error(ErrorKind::DimMismatch, "blocks differ in column count");
    grams.push_back(b.adjoint() * b);
    s += grams.back();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> eig(s);
  if (eig.eigenvalues().minCoeff() < Real(tol::kNormalizer)) {
    throw Error(ErrorKind::SingularNormalizer, "sum of block Gram matrices is singular");
  }
  const CMatrix<Real> inv_sqrt =
      eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().adjoint();
  for (auto& g : grams) {
    g = inv_sqrt * g * inv_sqrt;
    g = (g + g.adjoint()) / Real(2);
  }
  return grams;
}

template <typename Real = double>
BasicPovm<Real> general_povm_from_blocks(const std::vector<CMatrix<Real>>& blocks) {
  return BasicPovm<Real>::from_effects(effects_from_blocks<Real>(blocks), false);
}

/// Reads `count` blocks of size d x d from a flat real vector (re, im
/// interleaved, column-major per block).
template <typename Real = double>
std::vector<CMatrix<Real>> blocks_from_params(std::span<const double> params, std::size_t count, std::size_t d) {
  if (params.size() != 2 * count * d * d) throw Error(ErrorKind::DimMismatch, "wrong block parameter count");
  std::vector<CMatrix<Real>> blocks;
  std::size_t idx = 0;
  for (std::size_t b = 0; b < count; ++b) {
    CMatrix<Real> m(d, d);
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(d); ++j)
      for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(d); ++i, idx += 2) m(i, j) = {params[idx], params[idx + 1]};
    blocks.push_back(std::move(m));
  }
  return blocks;
}

// ---------------------------------------------------------------------------
// Local measurements

/// Unnormalized conditional state Tr_side((E (x) I) rho) on the other factor.
template <typename Real>
CMatrix<Real> conditional_operator(const CMatrix<Real>& rho, std::size_t d_a, std::size_t d_b, Side measured,
                                   const CMatrix<Real>& effect) {
  const auto da = static_cast<Eigen::Index>(d_a), db = static_cast<Eigen::Index>(d_b);
  if (measured == Side::B) {
    CMatrix<Real> out = CMatrix<Real>::Zero(da, da);
    for (Eigen::Index b = 0; b < db; ++b)
      for (Eigen::Index bp = 0; bp < db; ++bp) {
        const std::complex<Real> e = effect(bp, b);
        if (e == std::complex<Real>(0)) continue;
        for (Eigen::Index a = 0; a < da; ++a)
          for (Eigen::Index ap = 0; ap < da; ++ap) out(a, ap) += e * rho(a * db + b, ap * db + bp);
      }
    return out;
  }
  CMatrix<Real> out = CMatrix<Real>::Zero(db, db);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index ap = 0; ap < da; ++ap) {
      const std::complex<Real> e = effect(ap, a);
      if (e == std::complex<Real>(0)) continue;
      for (Eigen::Index b = 0; b < db; ++b)
        for (Eigen::Index bp = 0; bp < db; ++bp) out(b, bp) += e * rho(a * db + b, ap * db + bp);
    }
  return out;
}

struct MeasurementRecord {
  std::vector<double> probabilities;        // one per POVM outcome, including pruned ones
  std::vector<std::size_t> kept_outcomes;   // outcome index of each ensemble member
};

template <typename Real = double>
struct BasicLocalMeasurement {
  BasicQEnsemble<Real> ensemble;
  MeasurementRecord record;
};

using LocalMeasurement = BasicLocalMeasurement<double>;

inline void check_bipartite(const Dims& dims) {
  if (dims.size() != 2) throw Error(ErrorKind::DimMismatch, "state must declare exactly two subsystems");
}

/// Measures one factor of a bipartite state; outcomes with p_x < 1e-12 are
/// dropped from the ensemble on the unmeasured factor.
template <typename Real>
BasicLocalMeasurement<Real> measure_local(const BasicDensityMatrix<Real>& rho_ab, Side measured,
                                          const BasicPovm<Real>& povm) {
  check_bipartite(rho_ab.dims());
  const std::size_t da = rho_ab.dims()[0], db = rho_ab.dims()[1];
  if (povm.dim() != (measured == Side::A ? da : db)) throw Error(ErrorKind::DimMismatch, "POVM dimension mismatch");
  const Dims out_dims{measured == Side::A ? db : da};
  std::vector<typename BasicQEnsemble<Real>::Member> members;
  MeasurementRecord record;
  for (std::size_t x = 0; x < povm.size(); ++x) {
    const CMatrix<Real> sigma = conditional_operator<Real>(rho_ab.matrix(), da, db, measured, povm.effects()[x]);
    const Real p = sigma.trace().real();
    record.probabilities.push_back(static_cast<double>(p));
    if (p < Real(tol::kOutcomePrune)) continue;
    members.push_back({p, BasicDensityMatrix<Real>::from_matrix(sigma / p, out_dims)});
    record.kept_outcomes.push_back(x);
  }
  // renormalize away pruned mass so the ensemble weights form a distribution
  Real total = 0;
  for (const auto& m : members) total += m.p;
  for (auto& m : members) m.p /= total;
  return {BasicQEnsemble<Real>::from_members(std::move(members)), std::move(record)};
}

/// Quantum-classical embedding sum_x p_x rho_x (x) |x><x|.
template <typename Real>
BasicDensityMatrix<Real> qc_state(const BasicQEnsemble<Real>& xi) {
  const auto d = static_cast<Eigen::Index>(xi.dim());
  const auto m = static_cast<Eigen::Index>(xi.size());
  CMatrix<Real> out = CMatrix<Real>::Zero(d * m, d * m);
  for (Eigen::Index x = 0; x < m; ++x) {
    CMatrix<Real> proj = CMatrix<Real>::Zero(m, m);
    proj(x, x) = Real(1);
    const auto& member = xi.members()[static_cast<std::size_t>(x)];
    out += member.p * tensor(member.state.matrix(), proj);
  }
  Dims dims = xi.dims();
  dims.push_back(static_cast<std::size_t>(m));
  return BasicDensityMatrix<Real>::from_matrix(out, std::move(dims));
}

}  // namespace renyikw

#endif  // RENYIKW_MEASUREMENTS_HPP
