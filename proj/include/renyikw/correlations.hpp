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

// Measurement-induced correlations and the Rényi entanglement of formation.
//
// C_alpha(rho_AB) is the best Rényi Jensen-Shannon divergence of the ensemble
// a local rank-1 POVM on the measured factor leaves on the other factor.
// E_f^alpha(rho_AB) is a convex roof searched through rank-1 POVMs on a
// purifying system: every pure-state decomposition of rho_AB is induced by
// such a measurement, so the search space covers all decompositions with at
// most `outcomes` members.

#ifndef RENYIKW_CORRELATIONS_HPP
#define RENYIKW_CORRELATIONS_HPP

#include <functional>
#include <optional>
#include <vector>

#include "renyikw/entropy.hpp"
#include "renyikw/measurements.hpp"
#include "renyikw/optimize.hpp"
#include "renyikw/qstate.hpp"

namespace renyikw {

struct WeightedPureState {
  double p;
  PureState state;
};

struct CorrelationValue {
  double value = 0.0;
  std::optional<Povm> povm;                  // witness for C_alpha
  std::vector<WeightedPureState> ensemble;   // witness for convex roofs
  OptReport opt_report;
};

struct KwReport {
  double alpha = 0.0;
  double c_alpha_AE = 0.0;
  double s_alpha_A = 0.0;
  double eof_alpha_AB = 0.0;
  double gap = 0.0;
  double s_von_neumann_A = 0.0;
  OptReport c_alpha_report;
  OptReport eof_report;
};

/// Per-member value of a convex roof, given the dA x dB amplitude matrix of a
/// normalized pure state.
using MemberFunction = std::function<double(const ComplexMatrix&)>;

double mutual_information(const DensityMatrix& rho_ab);

/// Q_alpha of the ensemble produced by `povm` on the measured factor.
double induced_qjsd(const DensityMatrix& rho_ab, Side measured, const Povm& povm, double alpha);

/// C_alpha over rank-1 POVMs with `outcomes` effects (0 selects d^2 of the
/// measured factor).
CorrelationValue c_alpha(const DensityMatrix& rho_ab, Side measured, double alpha, const OptimizerConfig& config,
                         std::size_t outcomes = 0);

/// Minimizes sum_x q_x f(psi_x) over decompositions of rho_ab with up to
/// `outcomes` members (0 selects rank^2). Half of the restarts first descend
/// a Rényi-entropy roof: the von Neumann one by default, or, when f behaves
/// like the Rényi-`guide_alpha` entropy, a continuation from alpha = 1 down
/// to guide_alpha.
CorrelationValue convex_roof(const DensityMatrix& rho_ab, const MemberFunction& f, const OptimizerConfig& config,
                             std::size_t outcomes = 0, std::optional<double> guide_alpha = std::nullopt);

CorrelationValue eof_alpha(const DensityMatrix& rho_ab, double alpha, const OptimizerConfig& config,
                           std::size_t outcomes = 0);

/// I(A:B) - J(A:B) with J the alpha = 1 value of C_alpha.
double quantum_discord(const DensityMatrix& rho_ab, Side measured, const OptimizerConfig& config,
                       std::size_t outcomes = 0);

/// Both sides of C_alpha(rho_AE) = S_alpha(rho_A) - E_f^alpha(rho_AB) for a
/// pure state on A (x) B (x) E, measuring E.
KwReport kw_verify(const PureState& psi_abe, double alpha, const OptimizerConfig& config, std::size_t outcomes = 0);

struct MonotonicityResult {
  double before = 0.0;
  double after = 0.0;
};

/// C_alpha (measuring B) before and after local channels on A and B.
MonotonicityResult check_monotonicity(const DensityMatrix& rho_ab, double alpha, const KrausChannel& channel_a,
                                      const KrausChannel& channel_b, const OptimizerConfig& config,
                                      std::size_t outcomes = 0);

/// Diagnostics for sum_xy p(x,y) |x><x| (x) |y><y|, measuring B.
struct ClassicalStateReport {
  double eigenbasis_qjsd = 0.0;        // computational-basis measurement on B
  double optimized = 0.0;              // C_alpha from the optimizer
  double h_x_minus_conditional = 0.0;  // H_alpha(X) - H_alpha(X|Y)
  double h_xy_minus_conditional = 0.0; // H_alpha(X,Y) - H_alpha(X|Y)
};

DensityMatrix classical_state(const JointDistribution& pxy);

ClassicalStateReport classical_state_report(const JointDistribution& pxy, double alpha, const OptimizerConfig& config);

}  // namespace renyikw

#endif  // RENYIKW_CORRELATIONS_HPP
