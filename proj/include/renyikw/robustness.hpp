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


// Generalized robustness of pure states, the alpha = 1/2 identities built on
// it, and minimum-error discrimination of ensembles.

#ifndef RENYIKW_ROBUSTNESS_HPP
#define RENYIKW_ROBUSTNESS_HPP

#include <optional>

#include "renyikw/correlations.hpp"
#include "renyikw/entropy.hpp"
#include "renyikw/measurements.hpp"
#include "renyikw/optimize.hpp"
#include "renyikw/qstate.hpp"

namespace renyikw {

struct RobustnessValue {
  double r_g = 0.0;
  double lr_g = 0.0;  // log2(1 + r_g)
};

/// R_G = (sum_i c_i)^2 - 1 from the Schmidt coefficients c_i of a bipartite
/// pure state.
RobustnessValue robustness_pure(const PureState& psi_ab);

struct HalfLemmaCheck {
  double s_half = 0.0;  // S_1/2 of the reduced state, from its spectrum
  double lr_g = 0.0;    // from the Schmidt coefficients
  double diff = 0.0;
};

HalfLemmaCheck check_half_lemma(const PureState& psi_ab);

/// log2 (sum of singular values)^2 of a normalized amplitude matrix.
double log_robustness_of_amplitudes(const ComplexMatrix& amplitudes);

struct RoofCheck {
  double eof_half = 0.0;
  double lgr_roof = 0.0;
  double diff = 0.0;
};

/// E_f^{1/2} against the convex roof of LR_g, two separate searches.
RoofCheck eof_half_roof_check(const DensityMatrix& rho_ab, const OptimizerConfig& config, std::size_t outcomes = 0);

struct DiscriminationResult {
  double p_success = 0.0;
  Povm optimal_povm;
  OptReport opt_report;
  std::optional<double> helstrom_value;
};

/// sum_x p_x Tr(E_x rho_x) evaluated for a given POVM.
double success_probability(const QEnsemble& xi, const Povm& povm);

/// Helstrom value 1/2 (1 + ||p0 rho0 - p1 rho1||_1); two-member ensembles only.
double helstrom(const QEnsemble& xi);

/// Best guessing probability over POVMs with one outcome per member.
DiscriminationResult p_success(const QEnsemble& xi, const OptimizerConfig& config);

struct PsucBoundCheck {
  double s_half_avg = 0.0;     // S_1/2(sum_x p_x rho_x)
  double neg_log_psuc = 0.0;   // -log2 P_suc
  double slack = 0.0;          // s_half_avg - neg_log_psuc
  double s_half_joint = 0.0;   // S_1/2 of the classical-quantum state sum_x p_x |x><x| (x) rho_x
  double joint_slack = 0.0;    // s_half_joint - neg_log_psuc
  DiscriminationResult discrimination;
};

PsucBoundCheck check_psuc_bound(const QEnsemble& xi, const OptimizerConfig& config);

struct CapacityBoundCheck {
  double c_half = 0.0;        // C_1/2(rho_AE), measuring E
  double neg_log_psuc = 0.0;  // for the ensemble the optimal E-measurement leaves on A
  double eof_half = 0.0;      // E_f^{1/2}(rho_AB)
  double rhs = 0.0;           // neg_log_psuc - eof_half
  double slack = 0.0;         // c_half - rhs
  double s_half_a = 0.0;
};

CapacityBoundCheck check_single_copy_capacity_bound(const PureState& psi_abe, const OptimizerConfig& config,
                                                    std::size_t outcomes = 0);

}  // namespace renyikw

#endif  // RENYIKW_ROBUSTNESS_HPP
