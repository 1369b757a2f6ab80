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

// Seeded random-restart Nelder-Mead search. Each restart draws its start
// point uniformly from [-pi, pi]^n using a seed derived from the master seed
// and the restart index, so results do not depend on thread scheduling.

#ifndef RENYIKW_OPTIMIZE_HPP
#define RENYIKW_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace renyikw {

struct OptimizerConfig {
  std::size_t restarts = 32;
  std::size_t max_iters = 2000;  // per restart
  double objective_tol = 1e-8;
  double simplex_init_scale = 0.3;  // radians
  std::uint64_t master_seed = 0;
  bool parallel = false;

  void validate() const;
};

struct OptReport {
  double best_value = 0.0;
  std::vector<double> best_params;
  std::vector<double> per_restart_values;
  std::size_t best_restart = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

enum class Direction { Maximize, Minimize };

using Objective = std::function<double(std::span<const double>)>;

/// Seed of restart `r`; a splitmix64 mix of (master_seed, r).
std::uint64_t restart_seed(std::uint64_t master_seed, std::uint64_t r);

/// Optimizes `objective` over R^param_count. The objective must be a pure
/// function; it is called concurrently when `config.parallel` is set.
/// Throws NonFiniteObjective on NaN/inf values.
OptReport optimize_scalar(const Objective& objective, std::size_t param_count, Direction direction,
                          const OptimizerConfig& config);

/// One level of a staged search. `lift` maps the optimum of the previous
/// stage to an equally good starting point of this stage; it is unused for
/// the first stage.
struct Stage {
  std::size_t param_count = 0;
  Objective objective;
  std::function<std::vector<double>(std::span<const double>)> lift;
  double scale_factor = 1.0;  // multiplies simplex_init_scale for this stage
};

/// Random-restart search through a ladder of nested parameter spaces: each
/// restart descends in the first stage from a random start, then lifts its
/// optimum into every following stage and refines it there. The report
/// describes the last stage.
OptReport optimize_staged(const std::vector<Stage>& stages, Direction direction, const OptimizerConfig& config);

/// Several ladders ending in the same parameter space; restart r follows
/// ladder r mod ladders.size(). Mixing ladders guards against one ladder
/// steering every restart into the same basin. With `final_stage_top` > 0
/// only that many restarts, the best after the next-to-last stage, descend in
/// the last stage; the others are lifted into it without further search.
OptReport optimize_portfolio(const std::vector<std::vector<Stage>>& ladders, Direction direction,
                             const OptimizerConfig& config, std::size_t final_stage_top = 0);

struct LocalResult {
  std::vector<double> params;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// One bounded Nelder-Mead descent (minimization) from `start`, restarting
/// the simplex around the incumbent until a restart brings no improvement.
LocalResult nelder_mead(const Objective& objective, std::vector<double> start, double init_scale,
                        std::size_t max_iters, double tol);

}  // namespace renyikw

#endif  // RENYIKW_OPTIMIZE_HPP
