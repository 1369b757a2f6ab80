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

// Rényi entropies (classical, quantum, conditional), Schatten norms and the
// Rényi quantum Jensen-Shannon divergence. All logarithms are base 2.

#ifndef RENYIKW_ENTROPY_HPP
#define RENYIKW_ENTROPY_HPP

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "renyikw/qstate.hpp"

namespace renyikw {

/// |alpha - 1| below this selects the Shannon / von Neumann branch.
inline constexpr double kAlphaOneBand = 1e-6;

template <typename Real>
bool is_alpha_one(Real alpha) {
  return std::abs(alpha - Real(1)) < Real(kAlphaOneBand);
}

/// Raw entropies accept alpha in (0, 2].
template <typename Real>
void check_entropy_alpha(Real alpha) {
  if (!std::isfinite(alpha) || alpha <= Real(0) || alpha > Real(2)) {
    throw Error(ErrorKind::InvalidAlpha, "alpha must lie in (0, 2]");
  }
}

/// Correlation quantities accept alpha in (0, 1) or alpha = 1.
template <typename Real>
void check_correlation_alpha(Real alpha) {
  if (!std::isfinite(alpha) || alpha <= Real(0) || (alpha >= Real(1) && !is_alpha_one(alpha))) {
    throw Error(ErrorKind::InvalidAlpha, "alpha must lie in (0, 1) or equal 1");
  }
}

// ---------------------------------------------------------------------------
// Classical distributions

template <typename Real = double>
class BasicProbabilityVector {
 public:
  static BasicProbabilityVector from_weights(std::vector<Real> w) {
    Real sum = 0;
    for (Real x : w) {
      if (!std::isfinite(x) || x < Real(0)) throw Error(ErrorKind::InvalidInput, "negative probability");
      sum += x;
    }
    if (w.empty() || std::abs(sum - Real(1)) > Real(1e-10)) {
      throw Error(ErrorKind::InvalidInput, "probabilities do not sum to 1");
    }
    return BasicProbabilityVector(std::move(w));
  }

  static BasicProbabilityVector uniform(std::size_t n) {
    return BasicProbabilityVector(std::vector<Real>(n, Real(1) / Real(n)));
  }

  const std::vector<Real>& weights() const noexcept { return w_; }
  std::size_t size() const noexcept { return w_.size(); }

 private:
  explicit BasicProbabilityVector(std::vector<Real> w) : w_(std::move(w)) {}
  std::vector<Real> w_;
};

/// Joint table p(x, y): rows index x, columns index y.
template <typename Real = double>
class BasicJointDistribution {
 public:
  using Table = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

  static BasicJointDistribution from_table(Table t) {
    if (t.size() == 0 || !t.allFinite() || t.minCoeff() < Real(0)) {
      throw Error(ErrorKind::InvalidInput, "joint table must be finite and nonnegative");
    }
    if (std::abs(t.sum() - Real(1)) > Real(1e-10)) throw Error(ErrorKind::InvalidInput, "joint table does not sum to 1");
    return BasicJointDistribution(std::move(t));
  }

  const Table& table() const noexcept { return t_; }
  RVector<Real> marginal_x() const { return t_.rowwise().sum(); }
  RVector<Real> marginal_y() const { return t_.colwise().sum().transpose(); }

 private:
  explicit BasicJointDistribution(Table t) : t_(std::move(t)) {}
  Table t_;
};

/// Finite ensemble {p_k, rho_k} of states on a common space.
template <typename Real = double>
class BasicQEnsemble {
 public:
  struct Member {
    Real p;
    BasicDensityMatrix<Real> state;
  };

  static BasicQEnsemble from_members(std::vector<Member> members) {
    if (members.empty()) throw Error(ErrorKind::InvalidInput, "empty ensemble");
    std::vector<Real> w;
    for (const auto& m : members) {
      if (m.state.dim() != members.front().state.dim()) {
        throw Error(ErrorKind::DimMismatch, "ensemble members act on different spaces");
      }
      w.push_back(m.p);
    }
    BasicProbabilityVector<Real>::from_weights(std::move(w));
    return BasicQEnsemble(std::move(members));
  }

  const std::vector<Member>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  std::size_t dim() const noexcept { return members_.front().state.dim(); }
  const Dims& dims() const noexcept { return members_.front().state.dims(); }

  /// Average state sum_k p_k rho_k.
  BasicDensityMatrix<Real> average() const {
    CMatrix<Real> avg = CMatrix<Real>::Zero(dim(), dim());
    for (const auto& m : members_) avg += m.p * m.state.matrix();
    return BasicDensityMatrix<Real>::normalized(avg, dims());
  }

  /// Applies the same unitary to every member.
  BasicQEnsemble conjugated(const CMatrix<Real>& u) const {
    std::vector<Member> out;
    for (const auto& m : members_) {
      out.push_back({m.p, BasicDensityMatrix<Real>::from_matrix(u * m.state.matrix() * u.adjoint(), m.state.dims())});
    }
    return BasicQEnsemble(std::move(out));
  }

 private:
  explicit BasicQEnsemble(std::vector<Member> members) : members_(std::move(members)) {}
  std::vector<Member> members_;
};

using ProbabilityVector = BasicProbabilityVector<double>;
using JointDistribution = BasicJointDistribution<double>;
using QEnsemble = BasicQEnsemble<double>;

// ---------------------------------------------------------------------------
// Norms

template <typename Real>
Real schatten_from_singular(const RVector<Real>& s, Real p) {
  Real acc = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > Real(0)) acc += std::pow(s(i), p);
  return std::pow(acc, Real(1) / p);
}

/// Schatten-p norm (l_p norm of the singular values), p >= 1.
template <typename Derived>
typename Derived::RealScalar schatten_norm(const Eigen::MatrixBase<Derived>& a, typename Derived::RealScalar p) {
  using Real = typename Derived::RealScalar;
  if (!(p >= Real(1))) throw Error(ErrorKind::InvalidInput, "schatten_norm requires p >= 1");
  Eigen::JacobiSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(a.eval());
  return schatten_from_singular<Real>(svd.singularValues(), p);
}

/// Same formula for p in (0, 1), where it is only a quasi-norm.
template <typename Derived>
typename Derived::RealScalar schatten_quasi(const Eigen::MatrixBase<Derived>& a, typename Derived::RealScalar p) {
  using Real = typename Derived::RealScalar;
  if (!(p > Real(0))) throw Error(ErrorKind::InvalidInput, "schatten_quasi requires p > 0");
  Eigen::JacobiSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(a.eval());
  return schatten_from_singular<Real>(svd.singularValues(), p);
}

/// Trace norm of a Hermitian operator: sum of absolute eigenvalues.
template <typename Real>
Real trace_norm_hermitian(const CMatrix<Real>& h) {
  return eigenvalues_hermitian<Real>((h + h.adjoint()) / Real(2)).cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// Entropies

/// Rényi entropy of a probability vector in bits; zero weights are skipped
/// and tiny negative weights are treated as zero.
template <typename Real>
Real renyi_from_weights(std::span<const Real> w, Real alpha) {
  if (is_alpha_one(alpha)) {
    Real h = 0;
    for (Real x : w)
      if (x > Real(0)) h -= x * std::log2(x);
    return h;
  }
  Real acc = 0;
  for (Real x : w)
    if (x > Real(0)) acc += std::pow(x, alpha);
  return std::log2(acc) / (Real(1) - alpha);
}

/// Entropy of a spectrum; eigenvalues at or below tol::kSpectralFloor count
/// as zero.
template <typename Real>
Real renyi_from_spectrum(const RVector<Real>& ev, Real alpha) {
  const RVector<Real> floored = (ev.array() > Real(tol::kSpectralFloor)).select(ev, Real(0));
  return renyi_from_weights<Real>(std::span<const Real>(floored.data(), static_cast<std::size_t>(floored.size())),
                                  alpha);
}

template <typename Real>
Real renyi_classical(const BasicProbabilityVector<Real>& p, Real alpha) {
  check_entropy_alpha(alpha);
  return renyi_from_weights<Real>(std::span<const Real>(p.weights()), alpha);
}

template <typename Real>
Real renyi_quantum(const BasicDensityMatrix<Real>& rho, Real alpha) {
  check_entropy_alpha(alpha);
  return renyi_from_spectrum<Real>(rho.spectrum(), alpha);
}

/// Unchecked entropy of a Hermitian unit-trace matrix.
template <typename Real>
Real renyi_of_matrix(const CMatrix<Real>& rho, Real alpha) {
  return renyi_from_spectrum<Real>(eigenvalues_hermitian<Real>(rho), alpha);
}

/// H_alpha(X|Y) = 1/(1-alpha) sum_y p_y log sum_x p(x|y)^alpha; the alpha -> 1
/// branch is the Shannon conditional entropy.
template <typename Real>
Real renyi_conditional(const BasicJointDistribution<Real>& pxy, Real alpha) {
  check_entropy_alpha(alpha);
  const auto& t = pxy.table();
  Real h = 0;
  for (Eigen::Index y = 0; y < t.cols(); ++y) {
    const Real py = t.col(y).sum();
    if (py <= Real(0)) continue;
    std::vector<Real> cond(static_cast<std::size_t>(t.rows()));
    for (Eigen::Index x = 0; x < t.rows(); ++x) cond[static_cast<std::size_t>(x)] = t(x, y) / py;
    h += py * renyi_from_weights<Real>(std::span<const Real>(cond), alpha);
  }
  return h;
}

/// Rényi quantum Jensen-Shannon divergence
/// Q_alpha = S_alpha(sum_k p_k rho_k) - sum_k p_k S_alpha(rho_k).
template <typename Real>
Real qjsd(const BasicQEnsemble<Real>& xi, Real alpha) {
  check_correlation_alpha(alpha);
  if (xi.size() == 1) return Real(0);
  Real avg_entropy = 0;
  for (const auto& m : xi.members()) avg_entropy += m.p * renyi_quantum(m.state, alpha);
  return renyi_quantum(xi.average(), alpha) - avg_entropy;
}

}  // namespace renyikw

#endif  // RENYIKW_ENTROPY_HPP
