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

#include "renyikw/correlations.hpp"

#include <cmath>

namespace renyikw {

namespace {

std::size_t measured_dim(const DensityMatrix& rho_ab, Side measured) {
  check_bipartite(rho_ab.dims());
  return measured == Side::A ? rho_ab.dims()[0] : rho_ab.dims()[1];
}

Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

std::vector<std::size_t> keep_of(Side s) { return {s == Side::A ? std::size_t{0} : std::size_t{1}}; }

// Amplitude matrix of a vector on dA x dB (row-major reshape).
ComplexMatrix reshape(const ComplexVector& v, Eigen::Index da, Eigen::Index db) {
  ComplexMatrix x(da, db);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < db; ++b) x(a, b) = v(a * db + b);
  return x;
}

// Descending spectrum of a small Hermitian PSD matrix; closed form up to 2x2.
void small_spectrum(const ComplexMatrix& g, RealVector& out) {
  const Eigen::Index n = g.rows();
  out.resize(n);
  if (n == 1) {
    out(0) = g(0, 0).real();
  } else if (n == 2) {
    const double a = g(0, 0).real(), d = g(1, 1).real();
    const double half = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), std::abs(g(0, 1)));
    out(0) = half + r;
    out(1) = std::max(0.0, half - r);
  } else {
    out = eigenvalues_hermitian<double>(g);
  }
}

// A pure state on K (x) T (x) M stored as a (K*T) x M amplitude matrix. A
// rank-1 POVM on M with effects V^dagger|x><x|V leaves the unnormalized
// vectors psi * V(x,:)^T on K (x) T.
//
// The measured factor is first rotated into the eigenbasis of its reduced
// state (descending), so the isometry chart is anchored the same way however
// the input happens to be written; isometry() maps angles back to the
// original basis.
class SteeredEnsemble {
 public:
  SteeredEnsemble(const ComplexMatrix& psi, Eigen::Index k, Eigen::Index t)
      : basis_(eig_hermitian<double>(psi.adjoint() * psi).vectors), psi_(psi * basis_), k_(k), t_(t) {}

  Eigen::Index measured_dim() const { return psi_.cols(); }

  ComplexMatrix isometry(std::size_t n, std::span<const double> angles) const {
    return isometry_from_angles<double>(n, static_cast<std::size_t>(psi_.cols()), angles) * basis_.transpose();
  }

  ComplexMatrix members(std::size_t n, std::span<const double> angles) const {
    const ComplexMatrix v = isometry_from_angles<double>(n, static_cast<std::size_t>(psi_.cols()), angles);
    return psi_ * v.transpose();
  }

  /// sum_x q_x f(X_x, q_x), X_x the K x T amplitude matrix of the
  /// unnormalized member x (norm^2 = q_x); members below 1e-12 are skipped.
  template <typename MemberFn>
  double average(std::size_t n, std::span<const double> angles, MemberFn&& f) const {
    const ComplexMatrix phi = members(n, angles);
    ComplexMatrix x(k_, t_);
    double total = 0.0;
    for (Eigen::Index col = 0; col < phi.cols(); ++col) {
      const double q = phi.col(col).squaredNorm();
      if (q < tol::kOutcomePrune) continue;
      for (Eigen::Index a = 0; a < k_; ++a)
        for (Eigen::Index b = 0; b < t_; ++b) x(a, b) = phi(a * t_ + b, col);
      total += q * f(x, q);
    }
    return total;
  }

 private:
  ComplexMatrix basis_;
  ComplexMatrix psi_;
  Eigen::Index k_, t_;
};

// Arranges a pure state on `dims` as (kept, traced) x measured.
SteeredEnsemble steer(const PureState& psi, std::size_t kept, std::size_t traced, std::size_t measured) {
  const ComplexVector v = permute_subsystems<double>(psi.amplitudes(), psi.dims(), {kept, traced, measured});
  const auto dk = static_cast<Eigen::Index>(psi.dims()[kept]);
  const auto dt = static_cast<Eigen::Index>(psi.dims()[traced]);
  const auto dm = static_cast<Eigen::Index>(psi.dims()[measured]);
  ComplexMatrix m(dk * dt, dm);
  for (Eigen::Index i = 0; i < dk * dt; ++i)
    for (Eigen::Index e = 0; e < dm; ++e) m(i, e) = v(i * dm + e);
  return SteeredEnsemble(m, dk, dt);
}

// Rényi entropy of Tr_T of a member; the nonzero spectra of X X^dagger and
// X^dagger X agree, so the smaller Gram matrix is used.
struct ReducedEntropy {
  double alpha;
  ComplexMatrix gram;
  RealVector spectrum;

  double operator()(const ComplexMatrix& x, double q) {
    if (x.rows() <= x.cols()) gram.noalias() = x * x.adjoint();
    else gram.noalias() = x.adjoint() * x;
    small_spectrum(gram, spectrum);
    spectrum /= q;
    return renyi_from_spectrum<double>(spectrum, alpha);
  }
};

// Stage ladder for rank-1 POVM searches on an m-dimensional system: the
// warm-up objectives and then the target over m outcomes, and finally the
// target over n_final outcomes starting from the lifted m-outcome optimum.
using LadderValue = std::function<double(std::size_t, std::span<const double>)>;

std::vector<Stage> outcome_ladder(std::size_t m, std::size_t n_final, const std::vector<LadderValue>& warmups,
                                  const LadderValue& target, double refine_scale) {
  std::vector<Stage> stages;
  for (const auto& w : warmups) {
    stages.push_back({isometry_param_count(m, m), [w, m](std::span<const double> p) { return w(m, p); }, {}});
  }
  stages.push_back({isometry_param_count(m, m), [target, m](std::span<const double> p) { return target(m, p); }, {},
                    warmups.empty() ? 1.0 : refine_scale});
  if (n_final > m) {
    stages.push_back({isometry_param_count(n_final, m),
                      [target, n_final](std::span<const double> p) { return target(n_final, p); },
                      [m, n_final](std::span<const double> p) { return lift_isometry_angles(m, n_final, m, p); },
                      refine_scale});
  }
  return stages;
}

// Below alpha = 1 the member entropies have cusps at product members and a
// direct descent stalls in one of many kinks. The search instead follows the
// optimum down from alpha = 1, where the landscape is smooth, in small steps.
constexpr double kContinuationStep = 0.05;
constexpr double kRefineScale = 0.1;
// restarts refined after the lift to the full outcome count
constexpr std::size_t kLiftedRestarts = 4;

std::vector<double> continuation_alphas(double alpha) {
  std::vector<double> path;
  for (int k = 0; 1.0 - k * kContinuationStep > alpha + 1e-9; ++k) path.push_back(1.0 - k * kContinuationStep);
  return path;
}

// A continuation ladder towards `alpha` alongside a direct one; the direct
// ladder alone when there is nothing to continue from.
template <typename ValueAt>
std::vector<std::vector<Stage>> ladders_for(const LadderValue& target, const std::vector<double>& path, std::size_t m,
                                            std::size_t n, ValueAt value_at) {
  std::vector<std::vector<Stage>> ladders;
  if (!path.empty()) {
    std::vector<LadderValue> warmups;
    for (double a : path) warmups.push_back(value_at(a));
    ladders.push_back(outcome_ladder(m, n, warmups, target, kRefineScale));
  }
  ladders.push_back(outcome_ladder(m, n, {}, target, kRefineScale));
  return ladders;
}

}  // namespace

double mutual_information(const DensityMatrix& rho_ab) {
  check_bipartite(rho_ab.dims());
  return renyi_quantum(partial_trace(rho_ab, {0}), 1.0) + renyi_quantum(partial_trace(rho_ab, {1}), 1.0) -
         renyi_quantum(rho_ab, 1.0);
}

double induced_qjsd(const DensityMatrix& rho_ab, Side measured, const Povm& povm, double alpha) {
  return qjsd(measure_local(rho_ab, measured, povm).ensemble, alpha);
}

CorrelationValue c_alpha(const DensityMatrix& rho_ab, Side measured, double alpha, const OptimizerConfig& config,
                         std::size_t outcomes) {
  check_correlation_alpha(alpha);
  const std::size_t d = measured_dim(rho_ab, measured);
  const std::size_t n = outcomes == 0 ? d * d : outcomes;
  if (n < d) throw Error(ErrorKind::TooFewOutcomes, "C_alpha needs at least dim outcomes");
  const double s_unmeasured = renyi_quantum(partial_trace(rho_ab, keep_of(other(measured))), alpha);

  // measuring one factor of rho_AB acts on the corresponding factor of its purification
  const PureState purification = purify(rho_ab);
  const SteeredEnsemble steered =
      measured == Side::B ? steer(purification, 0, 2, 1) : steer(purification, 1, 2, 0);
  const auto value_at = [&](double a, double s_ref = 0.0) -> LadderValue {
    return [&steered, a, s_ref](std::size_t outcomes_now, std::span<const double> params) {
      return s_ref - steered.average(outcomes_now, params, ReducedEntropy{a, {}, {}});
    };
  };

  CorrelationValue out;
  out.opt_report = optimize_portfolio(
      ladders_for(value_at(alpha, s_unmeasured), continuation_alphas(alpha), d, n, [&](double a) { return value_at(a); }),
      Direction::Maximize, config, kLiftedRestarts);
  const ComplexMatrix v = steered.isometry(n, out.opt_report.best_params);
  std::vector<ComplexMatrix> effects;
  for (Eigen::Index x = 0; x < v.rows(); ++x) {
    const ComplexVector col = v.row(x).adjoint();
    effects.push_back(col * col.adjoint());
  }
  out.povm = Povm::from_effects(std::move(effects), true);
  out.value = induced_qjsd(rho_ab, measured, *out.povm, alpha);
  return out;
}

namespace {

// `path` lists the Rényi roofs the continuation ladder descends through
// before it switches to `member`.
template <typename MemberFn>
CorrelationValue convex_roof_impl(const DensityMatrix& rho_ab, MemberFn member, const std::vector<double>& path,
                                  const OptimizerConfig& config, std::size_t outcomes) {
  check_bipartite(rho_ab.dims());
  const PureState purification = purify(rho_ab);
  const std::size_t r = purification.dims().back();
  const std::size_t n = outcomes == 0 ? r * r : outcomes;
  if (n < r) throw Error(ErrorKind::TooFewOutcomes, "decomposition needs at least rank members");
  const SteeredEnsemble steered = steer(purification, 0, 1, 2);
  // one functor copy per evaluation: restarts may run concurrently
  const LadderValue value = [&](std::size_t outcomes_now, std::span<const double> params) {
    MemberFn f = member;
    return steered.average(outcomes_now, params, f);
  };
  const auto value_at = [&](double a) -> LadderValue {
    return [&steered, a](std::size_t outcomes_now, std::span<const double> params) {
      return steered.average(outcomes_now, params, ReducedEntropy{a, {}, {}});
    };
  };

  CorrelationValue out;
  out.opt_report =
      optimize_portfolio(ladders_for(value, path, r, n, value_at), Direction::Minimize, config, kLiftedRestarts);
  const ComplexMatrix phi = steered.members(n, out.opt_report.best_params);
  const auto da = static_cast<Eigen::Index>(rho_ab.dims()[0]), db = static_cast<Eigen::Index>(rho_ab.dims()[1]);
  double total_weight = 0.0;
  for (Eigen::Index x = 0; x < phi.cols(); ++x) {
    const double q = phi.col(x).squaredNorm();
    if (q < tol::kOutcomePrune) continue;
    out.ensemble.push_back({q, PureState::normalized(phi.col(x), rho_ab.dims())});
    total_weight += q;
  }
  out.value = 0.0;
  for (auto& m : out.ensemble) {
    m.p /= total_weight;
    out.value += m.p * member(reshape(m.state.amplitudes(), da, db), 1.0);
  }
  return out;
}

}  // namespace

CorrelationValue convex_roof(const DensityMatrix& rho_ab, const MemberFunction& f, const OptimizerConfig& config,
                             std::size_t outcomes, std::optional<double> guide_alpha) {
  const auto member = [&f](const ComplexMatrix& x, double q) { return f(x / std::sqrt(q)); };
  if (guide_alpha) check_correlation_alpha(*guide_alpha);
  const std::vector<double> path = guide_alpha ? continuation_alphas(*guide_alpha) : std::vector<double>{1.0};
  return convex_roof_impl(rho_ab, member, path, config, outcomes);
}

CorrelationValue eof_alpha(const DensityMatrix& rho_ab, double alpha, const OptimizerConfig& config,
                           std::size_t outcomes) {
  check_correlation_alpha(alpha);
  return convex_roof_impl(rho_ab, ReducedEntropy{alpha, {}, {}}, continuation_alphas(alpha), config, outcomes);
}

double quantum_discord(const DensityMatrix& rho_ab, Side measured, const OptimizerConfig& config,
                       std::size_t outcomes) {
  return mutual_information(rho_ab) - c_alpha(rho_ab, measured, 1.0, config, outcomes).value;
}

KwReport kw_verify(const PureState& psi_abe, double alpha, const OptimizerConfig& config, std::size_t outcomes) {
  check_correlation_alpha(alpha);
  if (psi_abe.dims().size() != 3) throw Error(ErrorKind::DimMismatch, "kw_verify needs dims (A, B, E)");
  const DensityMatrix rho_ae = partial_trace(psi_abe, {0, 2});
  const DensityMatrix rho_ab = partial_trace(psi_abe, {0, 1});
  const DensityMatrix rho_a = partial_trace(psi_abe, {0});

  KwReport report;
  report.alpha = alpha;
  const CorrelationValue c = c_alpha(rho_ae, Side::B, alpha, config, outcomes);
  const CorrelationValue e = eof_alpha(rho_ab, alpha, config, outcomes);
  report.c_alpha_AE = c.value;
  report.eof_alpha_AB = e.value;
  report.s_alpha_A = renyi_quantum(rho_a, alpha);
  report.s_von_neumann_A = renyi_quantum(rho_a, 1.0);
  report.gap = report.c_alpha_AE - (report.s_alpha_A - report.eof_alpha_AB);
  report.c_alpha_report = c.opt_report;
  report.eof_report = e.opt_report;
  return report;
}

MonotonicityResult check_monotonicity(const DensityMatrix& rho_ab, double alpha, const KrausChannel& channel_a,
                                      const KrausChannel& channel_b, const OptimizerConfig& config,
                                      std::size_t outcomes) {
  check_bipartite(rho_ab.dims());
  if (channel_a.in_dim() != rho_ab.dims()[0] || channel_b.in_dim() != rho_ab.dims()[1]) {
    throw Error(ErrorKind::DimMismatch, "local channel input dimensions do not match the state");
  }
  const DensityMatrix after =
      apply_channel(channel_a.tensor_with(channel_b), rho_ab, {channel_a.out_dim(), channel_b.out_dim()});
  MonotonicityResult out;
  out.before = c_alpha(rho_ab, Side::B, alpha, config, outcomes).value;
  out.after = c_alpha(after, Side::B, alpha, config, outcomes).value;
  return out;
}

DensityMatrix classical_state(const JointDistribution& pxy) {
  const auto& t = pxy.table();
  const Eigen::Index dx = t.rows(), dy = t.cols();
  ComplexMatrix m = ComplexMatrix::Zero(dx * dy, dx * dy);
  for (Eigen::Index x = 0; x < dx; ++x)
    for (Eigen::Index y = 0; y < dy; ++y) m(x * dy + y, x * dy + y) = t(x, y);
  return DensityMatrix::from_matrix(m, {static_cast<std::size_t>(dx), static_cast<std::size_t>(dy)});
}

ClassicalStateReport classical_state_report(const JointDistribution& pxy, double alpha, const OptimizerConfig& config) {
  check_correlation_alpha(alpha);
  const DensityMatrix rho = classical_state(pxy);
  const auto dy = pxy.table().cols();
  ClassicalStateReport out;
  out.eigenbasis_qjsd = induced_qjsd(rho, Side::B, Povm::projective(ComplexMatrix::Identity(dy, dy)), alpha);
  out.optimized = c_alpha(rho, Side::B, alpha, config).value;

  const RealVector px = pxy.marginal_x();
  std::vector<double> joint(pxy.table().data(), pxy.table().data() + pxy.table().size());
  const double h_x = renyi_from_weights<double>(std::span<const double>(px.data(), px.size()), alpha);
  const double h_xy = renyi_from_weights<double>(std::span<const double>(joint), alpha);
  const double h_cond = renyi_conditional(pxy, alpha);
  out.h_x_minus_conditional = h_x - h_cond;
  out.h_xy_minus_conditional = h_xy - h_cond;
  return out;
}

}  // namespace renyikw
