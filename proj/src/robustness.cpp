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


#include "renyikw/robustness.hpp"

#include <array>
#include <algorithm>
#include <cmath>

namespace renyikw {

namespace {

constexpr double kHalf = 0.5;
constexpr std::array<double, 2> kPolishScales{0.1, 0.01};

}  // namespace

RobustnessValue robustness_pure(const PureState& psi_ab) {
  check_bipartite(psi_ab.dims());
  const auto sd = schmidt(psi_ab, {0});
  const double sum = sd.coefficients.sum();
  RobustnessValue out;
  out.r_g = std::max(0.0, sum * sum - 1.0);
  out.lr_g = std::log2(1.0 + out.r_g);
  return out;
}

HalfLemmaCheck check_half_lemma(const PureState& psi_ab) {
  HalfLemmaCheck out;
  out.s_half = renyi_quantum(partial_trace(psi_ab, {0}), kHalf);
  out.lr_g = robustness_pure(psi_ab).lr_g;
  out.diff = out.s_half - out.lr_g;
  return out;
}

double log_robustness_of_amplitudes(const ComplexMatrix& amplitudes) {
  const Eigen::JacobiSVD<ComplexMatrix> svd(amplitudes);
  const double sum = svd.singularValues().sum();
  return std::log2(std::max(1.0, sum * sum));
}

RoofCheck eof_half_roof_check(const DensityMatrix& rho_ab, const OptimizerConfig& config, std::size_t outcomes) {
  RoofCheck out;
  out.eof_half = eof_alpha(rho_ab, kHalf, config, outcomes).value;
  out.lgr_roof = convex_roof(rho_ab, log_robustness_of_amplitudes, config, outcomes, 0.5).value;
  out.diff = out.eof_half - out.lgr_roof;
  return out;
}

double success_probability(const QEnsemble& xi, const Povm& povm) {
  if (povm.size() != xi.size() || povm.dim() != xi.dim()) {
    throw Error(ErrorKind::DimMismatch, "POVM must have one outcome per ensemble member");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < xi.size(); ++x) {
    const auto& m = xi.members()[x];
    total += m.p * (povm.effects()[x] * m.state.matrix()).trace().real();
  }
  return total;
}

double helstrom(const QEnsemble& xi) {
  if (xi.size() != 2) throw Error(ErrorKind::InvalidInput, "the Helstrom value needs exactly two members");
  const auto& m = xi.members();
  const ComplexMatrix diff = m[0].p * m[0].state.matrix() - m[1].p * m[1].state.matrix();
  return 0.5 * (1.0 + trace_norm_hermitian<double>(0.5 * (diff + diff.adjoint())));
}

DiscriminationResult p_success(const QEnsemble& xi, const OptimizerConfig& config) {
  if (xi.size() < 2) throw Error(ErrorKind::SingletonEnsemble, "discrimination needs at least two members");
  const std::size_t n = xi.size(), d = xi.dim();
  // p_x rho_x, so the objective is sum_x Re Tr(E_x sigma_x)
  std::vector<ComplexMatrix> weighted;
  for (const auto& m : xi.members()) weighted.push_back(m.p * m.state.matrix());

  const Objective objective = [&weighted, n, d](std::span<const double> params) {
    const auto blocks = blocks_from_params<double>(params, n, d);
    std::vector<ComplexMatrix> effects;
    try {
      effects = effects_from_blocks<double>(blocks);
    } catch (const Error&) {
      return 0.0;  // a singular normalizer is a measure-zero corner; score it as the worst POVM
    }
    double total = 0.0;
    for (std::size_t x = 0; x < n; ++x) total += (effects[x].cwiseProduct(weighted[x].transpose())).sum().real();
    return total;
  };

  // The optimum is projective, which the block parametrization only reaches in
  // the limit of rank-deficient blocks; a collapsed simplex stalls short of it.
  // Fresh, smaller simplices started from each restart's optimum close the gap.
  const std::size_t dim = 2 * n * d * d;
  const auto same_point = [](std::span<const double> x) { return std::vector<double>(x.begin(), x.end()); };
  std::vector<Stage> stages{{dim, objective, {}}};
  for (double scale : kPolishScales) stages.push_back({dim, objective, same_point, scale});
  OptReport report = optimize_staged(stages, Direction::Maximize, config);
  Povm povm = general_povm_from_blocks<double>(blocks_from_params<double>(report.best_params, n, d));
  const double value = success_probability(xi, povm);
  std::optional<double> closed_form;
  if (n == 2) closed_form = helstrom(xi);
  return {value, std::move(povm), std::move(report), closed_form};
}

PsucBoundCheck check_psuc_bound(const QEnsemble& xi, const OptimizerConfig& config) {
  PsucBoundCheck out{.discrimination = p_success(xi, config)};
  out.s_half_avg = renyi_quantum(xi.average(), kHalf);
  out.s_half_joint = renyi_quantum(qc_state(xi), kHalf);
  out.neg_log_psuc = -std::log2(std::min(1.0, out.discrimination.p_success));
  out.slack = out.s_half_avg - out.neg_log_psuc;
  out.joint_slack = out.s_half_joint - out.neg_log_psuc;
  return out;
}

CapacityBoundCheck check_single_copy_capacity_bound(const PureState& psi_abe, const OptimizerConfig& config,
                                                    std::size_t outcomes) {
  if (psi_abe.dims().size() != 3) throw Error(ErrorKind::DimMismatch, "state must declare dims (A, B, E)");
  const DensityMatrix rho_ae = partial_trace(psi_abe, {0, 2});
  const DensityMatrix rho_ab = partial_trace(psi_abe, {0, 1});

  CapacityBoundCheck out;
  const CorrelationValue c = c_alpha(rho_ae, Side::B, kHalf, config, outcomes);
  out.c_half = c.value;
  out.eof_half = eof_alpha(rho_ab, kHalf, config, outcomes).value;
  out.s_half_a = renyi_quantum(partial_trace(psi_abe, {0}), kHalf);

  // the witness measurement on E defines the ensemble X on A; a single
  // surviving member is guessed with certainty
  const QEnsemble xi = measure_local(rho_ae, Side::B, *c.povm).ensemble;
  const double psuc = xi.size() < 2 ? 1.0 : p_success(xi, config).p_success;
  out.neg_log_psuc = -std::log2(std::min(1.0, psuc));
  out.rhs = out.neg_log_psuc - out.eof_half;
  out.slack = out.c_half - out.rhs;
  return out;
}

}  // namespace renyikw
