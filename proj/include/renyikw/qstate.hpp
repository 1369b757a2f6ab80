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

// Finite-dimensional quantum states: density matrices, pure states, Kraus
// channels, and the linear-algebra primitives built on top of Eigen.
//
// Composite spaces use the Kronecker convention: the first subsystem is the
// most significant index, so |i>|j> has flat index i * d_B + j.

#ifndef RENYIKW_QSTATE_HPP
#define RENYIKW_QSTATE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "renyikw/types.hpp"

namespace renyikw {

namespace tol {
inline constexpr double kHermitianState = 1e-10;
inline constexpr double kHermitianEig = 1e-8;
inline constexpr double kTrace = 1e-10;
inline constexpr double kNegativeEig = 1e-8;
inline constexpr double kNorm = 1e-10;
inline constexpr double kKraus = 1e-9;
inline constexpr double kRank = 1e-12;
// eigenvalues at or below this are exact zeros for 0^alpha = 0; round-off of
// order 1e-16 would otherwise add (1e-16)^alpha to spectral sums at small alpha
inline constexpr double kSpectralFloor = 1e-12;
}  // namespace tol

template <typename Derived>
typename Derived::RealScalar hermitian_deviation(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Spectral primitives

template <typename Real = double>
struct HermitianEigen {
  RVector<Real> values;   // descending
  CMatrix<Real> vectors;  // orthonormal columns, matching `values`
};

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order. Throws NonHermitian above 1e-8 asymmetry.
template <typename Real>
HermitianEigen<Real> eig_hermitian(const CMatrix<Real>& h) {
  if (h.rows() != h.cols()) throw Error(ErrorKind::DimMismatch, "eig_hermitian: matrix not square");
  if (h.size() > 0 && hermitian_deviation(h) > Real(tol::kHermitianEig)) {
    throw Error(ErrorKind::NonHermitian, "eig_hermitian: asymmetry above tolerance");
  }
  const CMatrix<Real> sym = (h + h.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(sym);
  const Eigen::Index n = h.rows();
  HermitianEigen<Real> out{RVector<Real>(n), CMatrix<Real>(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

/// Eigenvalues only, descending.
template <typename Real>
RVector<Real> eigenvalues_hermitian(const CMatrix<Real>& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

/// Kronecker product.
template <typename DerivedA, typename DerivedB>
auto tensor(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Index bookkeeping for composite systems

namespace detail {

inline void check_keep(const Dims& dims, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw Error(ErrorKind::DimMismatch, "subsystem selection is empty");
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] >= dims.size()) throw Error(ErrorKind::DimMismatch, "subsystem index out of range");
    if (k > 0 && keep[k] <= keep[k - 1]) {
      throw Error(ErrorKind::DimMismatch, "subsystem selection must be strictly increasing");
    }
  }
}

/// Splits every flat index into (index within kept subsystems, index within
/// traced subsystems).
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    const Dims& dims, const std::vector<std::size_t>& keep) {
  const std::size_t total = product(dims);
  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep) kept[k] = true;
  std::vector<std::size_t> keep_idx(total), trace_idx(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat, stride = total, ki = 0, ti = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      stride /= dims[s];
      const std::size_t digit = rem / stride;
      rem %= stride;
      if (kept[s]) ki = ki * dims[s] + digit;
      else ti = ti * dims[s] + digit;
    }
    keep_idx[flat] = ki;
    trace_idx[flat] = ti;
  }
  return {std::move(keep_idx), std::move(trace_idx)};
}

inline Dims select_dims(const Dims& dims, const std::vector<std::size_t>& keep) {
  Dims out;
  for (auto k : keep) out.push_back(dims[k]);
  return out;
}

}  // namespace detail

/// Partial trace of a raw operator: keeps the listed subsystems (strictly
/// increasing indices into `dims`).
template <typename Real>
CMatrix<Real> partial_trace(const CMatrix<Real>& m, const Dims& dims, const std::vector<std::size_t>& keep) {
  if (product(dims) != static_cast<std::size_t>(m.rows()) || m.rows() != m.cols()) {
    throw Error(ErrorKind::DimMismatch, "partial_trace: dims product does not match matrix size");
  }
  detail::check_keep(dims, keep);
  const auto [keep_idx, trace_idx] = detail::split_indices(dims, keep);
  const auto dk = static_cast<Eigen::Index>(product(detail::select_dims(dims, keep)));
  CMatrix<Real> out = CMatrix<Real>::Zero(dk, dk);
  const std::size_t n = keep_idx.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (trace_idx[i] == trace_idx[j]) out(keep_idx[i], keep_idx[j]) += m(i, j);
    }
  }
  return out;
}

/// Reorders the tensor factors of a state vector: output subsystem k is input
/// subsystem order[k].
template <typename Real>
CVector<Real> permute_subsystems(const CVector<Real>& v, const Dims& dims, const std::vector<std::size_t>& order) {
  const std::size_t total = product(dims);
  if (order.size() != dims.size() || total != static_cast<std::size_t>(v.size())) {
    throw Error(ErrorKind::DimMismatch, "permute_subsystems: bad permutation");
  }
  Dims out_dims = detail::select_dims(dims, order);
  // strides of the input layout
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t s = dims.size(); s-- > 1;) stride[s - 1] = stride[s] * dims[s];
  CVector<Real> out(v.size());
  std::vector<std::size_t> digit(dims.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t src = 0;
    for (std::size_t k = 0; k < order.size(); ++k) src += digit[k] * stride[order[k]];
    out(flat) = v(src);
    for (std::size_t k = out_dims.size(); k-- > 0;) {
      if (++digit[k] < out_dims[k]) break;
      digit[k] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// State types

/// Hermitian, positive semi-definite, unit-trace operator with declared
/// subsystem dimensions. Immutable once constructed.
template <typename Real = double>
class BasicDensityMatrix {
 public:
  using Matrix = CMatrix<Real>;

  /// Validates and stores `m`. Eigenvalues in [-1e-8, 0) are accepted; the
  /// stored matrix is the Hermitian part of `m`.
  static BasicDensityMatrix from_matrix(const Matrix& m, Dims dims = {}) {
    if (m.rows() != m.cols() || m.rows() == 0) throw Error(ErrorKind::DimMismatch, "density matrix must be square");
    if (dims.empty()) dims = {static_cast<std::size_t>(m.rows())};
    if (product(dims) != static_cast<std::size_t>(m.rows())) {
      throw Error(ErrorKind::DimMismatch, "dims product does not match matrix size");
    }
    if (!m.allFinite()) throw Error(ErrorKind::InvalidState, "non-finite matrix entry");
    if (hermitian_deviation(m) > Real(tol::kHermitianState)) {
      throw Error(ErrorKind::NonHermitian, "density matrix is not Hermitian");
    }
    Matrix sym = (m + m.adjoint()) / Real(2);
    if (std::abs(sym.trace().real() - Real(1)) > Real(tol::kTrace)) {
      throw Error(ErrorKind::InvalidState, "density matrix trace differs from 1");
    }
    if (eigenvalues_hermitian<Real>(sym).minCoeff() < -Real(tol::kNegativeEig)) {
      throw Error(ErrorKind::InvalidState, "density matrix has a negative eigenvalue");
    }
    return BasicDensityMatrix(std::move(sym), std::move(dims));
  }

  /// Divides a PSD operator by its trace before validating.
  static BasicDensityMatrix normalized(const Matrix& m, Dims dims = {}) {
    const Real tr = m.trace().real();
    if (!(tr > Real(0))) throw Error(ErrorKind::InvalidState, "operator has non-positive trace");
    return from_matrix(m / tr, std::move(dims));
  }

  static BasicDensityMatrix maximally_mixed(std::size_t d) {
    return BasicDensityMatrix(Matrix::Identity(d, d) / Real(d), {d});
  }

  const Matrix& matrix() const noexcept { return m_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

  /// Eigenvalues, descending; values at or below tol::kSpectralFloor
  /// (including the tolerated [-1e-8, 0) band) are set to zero.
  RVector<Real> spectrum() const {
    const RVector<Real> ev = eigenvalues_hermitian<Real>(m_);
    return (ev.array() > Real(tol::kSpectralFloor)).select(ev, Real(0));
  }

  BasicDensityMatrix with_dims(Dims dims) const { return from_matrix(m_, std::move(dims)); }

 private:
  BasicDensityMatrix(Matrix m, Dims dims) : m_(std::move(m)), dims_(std::move(dims)) {}

  Matrix m_;
  Dims dims_;
};

/// Unit-norm state vector with declared subsystem dimensions.
template <typename Real = double>
class BasicPureState {
 public:
  using Vector = CVector<Real>;

  static BasicPureState from_vector(const Vector& v, Dims dims = {}) {
    if (v.size() == 0) throw Error(ErrorKind::DimMismatch, "empty state vector");
    if (dims.empty()) dims = {static_cast<std::size_t>(v.size())};
    if (product(dims) != static_cast<std::size_t>(v.size())) {
      throw Error(ErrorKind::DimMismatch, "dims product does not match vector size");
    }
    if (!v.allFinite()) throw Error(ErrorKind::InvalidState, "non-finite amplitude");
    if (std::abs(v.squaredNorm() - Real(1)) > Real(tol::kNorm)) {
      throw Error(ErrorKind::InvalidState, "state vector is not normalized");
    }
    return BasicPureState(v, std::move(dims));
  }

  static BasicPureState normalized(const Vector& v, Dims dims = {}) {
    const Real n = v.norm();
    if (!(n > Real(0))) throw Error(ErrorKind::InvalidState, "zero vector");
    return from_vector(v / n, std::move(dims));
  }

  /// Computational basis state |index>.
  static BasicPureState basis(std::size_t index, Dims dims) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(product(dims)));
    v(static_cast<Eigen::Index>(index)) = Real(1);
    return from_vector(v, std::move(dims));
  }

  const Vector& amplitudes() const noexcept { return v_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(v_.size()); }

  BasicDensityMatrix<Real> density() const {
    return BasicDensityMatrix<Real>::from_matrix(v_ * v_.adjoint(), dims_);
  }

 private:
  BasicPureState(Vector v, Dims dims) : v_(std::move(v)), dims_(std::move(dims)) {}

  Vector v_;
  Dims dims_;
};

template <typename Real = double>
struct BasicSchmidtDecomposition {
  RVector<Real> coefficients;  // descending, strictly positive
  CMatrix<Real> left_basis;    // columns |a_l>
  CMatrix<Real> right_basis;   // columns |b_l>
  Dims left_dims;
  Dims right_dims;

  CVector<Real> reconstruct() const {
    CVector<Real> v = CVector<Real>::Zero(left_basis.rows() * right_basis.rows());
    for (Eigen::Index l = 0; l < coefficients.size(); ++l) {
      v += coefficients(l) * tensor(left_basis.col(l), right_basis.col(l));
    }
    return v;
  }
};

/// Completely positive trace-preserving map given by Kraus operators.
template <typename Real = double>
class BasicKrausChannel {
 public:
  static BasicKrausChannel from_operators(std::vector<CMatrix<Real>> ops) {
    if (ops.empty()) throw Error(ErrorKind::IncompleteKraus, "no Kraus operators");
    const auto out = ops.front().rows(), in = ops.front().cols();
    CMatrix<Real> sum = CMatrix<Real>::Zero(in, in);
    for (const auto& k : ops) {
      if (k.rows() != out || k.cols() != in) throw Error(ErrorKind::DimMismatch, "Kraus operator shapes differ");
      sum += k.adjoint() * k;
    }
    if ((sum - CMatrix<Real>::Identity(in, in)).cwiseAbs().maxCoeff() > Real(tol::kKraus)) {
      throw Error(ErrorKind::IncompleteKraus, "sum of K^dagger K differs from identity");
    }
    return BasicKrausChannel(std::move(ops));
  }

  static BasicKrausChannel identity(std::size_t d) {
    return BasicKrausChannel({CMatrix<Real>::Identity(d, d)});
  }

  /// Unitary conjugation rho -> U rho U^dagger.
  static BasicKrausChannel unitary(const CMatrix<Real>& u) { return from_operators({u}); }

  /// Completely depolarizing map rho -> I/d, via the d^2 operators |i><j|/sqrt(d).
  static BasicKrausChannel depolarizing(std::size_t d) {
    std::vector<CMatrix<Real>> ops;
    const Real s = Real(1) / std::sqrt(Real(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        CMatrix<Real> k = CMatrix<Real>::Zero(d, d);
        k(i, j) = s;
        ops.push_back(std::move(k));
      }
    }
    return BasicKrausChannel(std::move(ops));
  }

  /// Complete dephasing in the computational basis.
  static BasicKrausChannel dephasing(std::size_t d) {
    std::vector<CMatrix<Real>> ops;
    for (std::size_t i = 0; i < d; ++i) {
      CMatrix<Real> k = CMatrix<Real>::Zero(d, d);
      k(i, i) = Real(1);
      ops.push_back(std::move(k));
    }
    return BasicKrausChannel(std::move(ops));
  }

  const std::vector<CMatrix<Real>>& operators() const noexcept { return ops_; }
  std::size_t in_dim() const noexcept { return static_cast<std::size_t>(ops_.front().cols()); }
  std::size_t out_dim() const noexcept { return static_cast<std::size_t>(ops_.front().rows()); }

  /// Product channel acting as *this on the first factor and `other` on the second.
  BasicKrausChannel tensor_with(const BasicKrausChannel& other) const {
    std::vector<CMatrix<Real>> ops;
    for (const auto& a : ops_)
      for (const auto& b : other.ops_) ops.push_back(tensor(a, b));
    return BasicKrausChannel(std::move(ops));
  }

 private:
  explicit BasicKrausChannel(std::vector<CMatrix<Real>> ops) : ops_(std::move(ops)) {}

  std::vector<CMatrix<Real>> ops_;
};

using DensityMatrix = BasicDensityMatrix<double>;
using PureState = BasicPureState<double>;
using SchmidtDecomposition = BasicSchmidtDecomposition<double>;
using KrausChannel = BasicKrausChannel<double>;

// ---------------------------------------------------------------------------
// Operations on states

/// Spectral power rho^alpha with the 0^alpha = 0 convention.
template <typename Real>
CMatrix<Real> mat_power(const BasicDensityMatrix<Real>& rho, Real alpha) {
  if (!(alpha > Real(0)) || !std::isfinite(alpha)) throw Error(ErrorKind::InvalidAlpha, "alpha must be positive");
  const auto eig = eig_hermitian<Real>(rho.matrix());
  RVector<Real> powered(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const Real lam = eig.values(i);
    if (lam < -Real(tol::kNegativeEig)) throw Error(ErrorKind::InvalidState, "negative eigenvalue");
    powered(i) = lam > Real(tol::kSpectralFloor) ? std::pow(lam, alpha) : Real(0);
  }
  CMatrix<Real> out = eig.vectors * powered.asDiagonal() * eig.vectors.adjoint();
  return (out + out.adjoint()) / Real(2);
}

template <typename Real>
BasicDensityMatrix<Real> tensor(const BasicDensityMatrix<Real>& a, const BasicDensityMatrix<Real>& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return BasicDensityMatrix<Real>::from_matrix(tensor(a.matrix(), b.matrix()), std::move(dims));
}

template <typename Real>
BasicPureState<Real> tensor(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return BasicPureState<Real>::normalized(tensor(a.amplitudes(), b.amplitudes()), std::move(dims));
}

template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho, const std::vector<std::size_t>& keep) {
  CMatrix<Real> reduced = partial_trace<Real>(rho.matrix(), rho.dims(), keep);
  return BasicDensityMatrix<Real>::from_matrix(reduced, detail::select_dims(rho.dims(), keep));
}

/// Reduced state of a pure state, computed from the amplitude matrix.
template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicPureState<Real>& psi, const std::vector<std::size_t>& keep) {
  const Dims& dims = psi.dims();
  detail::check_keep(dims, keep);
  std::vector<std::size_t> order = keep;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) order.push_back(s);
  const CVector<Real> v = permute_subsystems<Real>(psi.amplitudes(), dims, order);
  const auto dk = static_cast<Eigen::Index>(product(detail::select_dims(dims, keep)));
  const Eigen::Index dt = v.size() / dk;
  // row-major reshape: amplitude(k, t) = v(k * dt + t)
  const Eigen::Map<const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> amp(
      v.data(), dk, dt);
  return BasicDensityMatrix<Real>::from_matrix(amp * amp.adjoint(), detail::select_dims(dims, keep));
}

/// Purification with an environment of dimension rank(rho) appended as the
/// last subsystem: |psi> = sum_i sqrt(lambda_i) |e_i>|i>.
template <typename Real>
BasicPureState<Real> purify(const BasicDensityMatrix<Real>& rho) {
  const auto eig = eig_hermitian<Real>(rho.matrix());
  Eigen::Index rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > Real(tol::kRank)) ++rank;
  if (rank == 0) throw Error(ErrorKind::InvalidState, "purify: zero operator");
  const auto d = static_cast<Eigen::Index>(rho.dim());
  CVector<Real> v = CVector<Real>::Zero(d * rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    CVector<Real> env = CVector<Real>::Zero(rank);
    env(i) = Real(1);
    v += std::sqrt(eig.values(i)) * tensor(eig.vectors.col(i), env);
  }
  Dims dims = rho.dims();
  dims.push_back(static_cast<std::size_t>(rank));
  return BasicPureState<Real>::normalized(v, std::move(dims));
}

/// Schmidt decomposition across the cut `left | rest`, where `left` lists the
/// subsystems on the left side in increasing order.
template <typename Real>
BasicSchmidtDecomposition<Real> schmidt(const BasicPureState<Real>& psi, const std::vector<std::size_t>& left) {
  const Dims& dims = psi.dims();
  detail::check_keep(dims, left);
  std::vector<std::size_t> order = left, right;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (std::find(left.begin(), left.end(), s) == left.end()) right.push_back(s);
  order.insert(order.end(), right.begin(), right.end());
  const CVector<Real> v = permute_subsystems<Real>(psi.amplitudes(), dims, order);
  Dims left_dims = detail::select_dims(dims, left), right_dims = detail::select_dims(dims, right);
  const auto dl = static_cast<Eigen::Index>(product(left_dims));
  const Eigen::Index dr = v.size() / dl;
  CMatrix<Real> amp(dl, dr);
  for (Eigen::Index i = 0; i < dl; ++i)
    for (Eigen::Index j = 0; j < dr; ++j) amp(i, j) = v(i * dr + j);
  Eigen::JacobiSVD<CMatrix<Real>> svd(amp, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::Index kept = 0;
  while (kept < svd.singularValues().size() && svd.singularValues()(kept) > Real(tol::kRank)) ++kept;
  BasicSchmidtDecomposition<Real> out;
  out.coefficients = svd.singularValues().head(kept);
  out.left_basis = svd.matrixU().leftCols(kept);
  out.right_basis = svd.matrixV().leftCols(kept).conjugate();
  out.left_dims = std::move(left_dims);
  out.right_dims = std::move(right_dims);
  return out;
}

/// Applies the channel; `out_dims` defaults to the input dims when the
/// channel preserves dimension and to a single factor otherwise.
template <typename Real>
BasicDensityMatrix<Real> apply_channel(const BasicKrausChannel<Real>& channel, const BasicDensityMatrix<Real>& rho,
                                       Dims out_dims = {}) {
  if (channel.in_dim() != rho.dim()) throw Error(ErrorKind::DimMismatch, "channel input dimension mismatch");
  CMatrix<Real> out = CMatrix<Real>::Zero(channel.out_dim(), channel.out_dim());
  for (const auto& k : channel.operators()) out += k * rho.matrix() * k.adjoint();
  if (out_dims.empty()) out_dims = channel.out_dim() == rho.dim() ? rho.dims() : Dims{channel.out_dim()};
  return BasicDensityMatrix<Real>::from_matrix(out, std::move(out_dims));
}

// ---------------------------------------------------------------------------
// Random states

using Rng = std::mt19937_64;

template <typename Real = double>
CMatrix<Real> ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<Real> normal(Real(0), Real(1));
  CMatrix<Real> g(rows, cols);
  // column-major fill order is part of the seeded output contract
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      g(i, j) = {re, im};
    }
  return g;
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
template <typename Real = double>
CMatrix<Real> random_unitary(std::size_t d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::HouseholderQR<CMatrix<Real>> qr(ginibre<Real>(n, n, rng));
  CMatrix<Real> q = qr.householderQ() * CMatrix<Real>::Identity(n, n);
  const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Real mag = std::abs(r(j, j));
    if (mag > Real(0)) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

template <typename Real = double>
BasicPureState<Real> random_pure(const Dims& dims, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(product(dims));
  return BasicPureState<Real>::normalized(ginibre<Real>(d, 1, rng).col(0), dims);
}

/// Ginibre ensemble of rank `rank`: G G^dagger / Tr(G G^dagger), G of size dim x rank.
template <typename Real = double>
BasicDensityMatrix<Real> random_mixed(const Dims& dims, std::size_t rank, Rng& rng) {
  const std::size_t d = product(dims);
  if (rank == 0 || rank > d) throw Error(ErrorKind::InvalidRank, "rank must be in [1, dim]");
  const CMatrix<Real> g = ginibre<Real>(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rank), rng);
  return BasicDensityMatrix<Real>::normalized(g * g.adjoint(), dims);
}

/// Random channel from a Haar isometry C^in -> C^out (x) C^k (Stinespring).
template <typename Real = double>
BasicKrausChannel<Real> random_channel(std::size_t in, std::size_t out, std::size_t kraus_count, Rng& rng) {
  if (out * kraus_count < in) throw Error(ErrorKind::DimMismatch, "random_channel: too few Kraus operators");
  const CMatrix<Real> u = random_unitary<Real>(out * kraus_count, rng);
  std::vector<CMatrix<Real>> ops;
  for (std::size_t k = 0; k < kraus_count; ++k) {
    CMatrix<Real> op(out, in);
    for (std::size_t i = 0; i < out; ++i)
      for (std::size_t j = 0; j < in; ++j) op(i, j) = u(i * kraus_count + k, j);
    ops.push_back(std::move(op));
  }
  return BasicKrausChannel<Real>::from_operators(std::move(ops));
}

enum class RandomKind { HaarPure, GinibreMixed };

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

template <typename Real = double>
BasicPureState<Real> random_pure(const Dims& dims, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_pure<Real>(dims, rng);
}

template <typename Real = double>
BasicDensityMatrix<Real> random_mixed(const Dims& dims, std::size_t rank, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_mixed<Real>(dims, rank, rng);
}

template <typename Real = double>
using RandomState = std::variant<BasicPureState<Real>, BasicDensityMatrix<Real>>;

/// Seeded random state; `rank` is ignored for HaarPure.
template <typename Real = double>
RandomState<Real> random_state(RandomKind kind, const Dims& dims, std::size_t rank, std::uint64_t seed) {
  if (kind == RandomKind::HaarPure) return random_pure<Real>(dims, seed);
  return random_mixed<Real>(dims, rank, seed);
}

}  // namespace renyikw

#endif  // RENYIKW_QSTATE_HPP
