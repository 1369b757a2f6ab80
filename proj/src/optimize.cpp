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

#include "renyikw/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <thread>

#include "renyikw/types.hpp"

namespace renyikw {

namespace {

constexpr double kDiameterTol = 1e-9;
constexpr std::size_t kStallWindow = 50;
constexpr std::size_t kDiameterStride = 8;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double checked(const Objective& f, std::span<const double> x) {
  const double v = f(x);
  if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteObjective, "objective returned a non-finite value");
  return v;
}

struct Vertex {
  std::vector<double> x;
  double f;
};

struct SimplexRun {
  Vertex best;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Nelder-Mead with dimension-adaptive coefficients (Gao & Han) for n >= 2.
SimplexRun run_simplex(const Objective& f, const std::vector<double>& start, double start_value, double scale,
                       std::size_t max_iters, double tol) {
  const std::size_t n = start.size();
  const double nd = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = n >= 2 ? 1.0 + 2.0 / nd : 2.0;
  const double contract = n >= 2 ? 0.75 - 1.0 / (2.0 * nd) : 0.5;
  const double shrink = n >= 2 ? 1.0 - 1.0 / nd : 0.5;

  SimplexRun run;
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({start, start_value});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = start;
    x[i] += scale;
    const double fx = checked(f, x);
    ++run.evaluations;
    simplex.push_back({std::move(x), fx});
  }
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  std::vector<double> centroid(n), trial(n), trial2(n), vertex_sum(n, 0.0);
  auto recompute_sum = [&] {
    std::fill(vertex_sum.begin(), vertex_sum.end(), 0.0);
    for (const auto& v : simplex)
      for (std::size_t i = 0; i < n; ++i) vertex_sum[i] += v.x[i];
  };
  recompute_sum();
  auto point = [&](double coeff, std::vector<double>& out) {
    const auto& worst = simplex.back().x;
    for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + coeff * (centroid[i] - worst[i]);
  };

  std::vector<double> best_history;
  best_history.reserve(max_iters + 1);
  std::stable_sort(simplex.begin(), simplex.end(), by_value);

  while (run.iterations < max_iters) {
    best_history.push_back(simplex.front().f);
    // the O(n^2) diameter test runs every few iterations
    if (run.iterations % kDiameterStride == 0) {
      double diameter = 0.0;
      for (std::size_t v = 1; v <= n; ++v)
        for (std::size_t i = 0; i < n; ++i) diameter = std::max(diameter, std::abs(simplex[v].x[i] - simplex[0].x[i]));
      if (diameter < kDiameterTol) {
        run.converged = true;
        break;
      }
    }
    if (best_history.size() > kStallWindow) {
      const double past = best_history[best_history.size() - 1 - kStallWindow];
      const double spread = simplex.back().f - simplex.front().f;
      if (past - simplex.front().f < tol && spread < tol) {
        run.converged = true;
        break;
      }
    }
    ++run.iterations;

    for (std::size_t i = 0; i < n; ++i) centroid[i] = (vertex_sum[i] - simplex.back().x[i]) / nd;

    point(reflect, trial);
    const double fr = checked(f, trial);
    ++run.evaluations;
    Vertex candidate;
    bool accepted = false;
    if (fr < simplex.front().f) {
      point(reflect * expand, trial2);
      const double fe = checked(f, trial2);
      ++run.evaluations;
      candidate = fe < fr ? Vertex{trial2, fe} : Vertex{trial, fr};
      accepted = true;
    } else if (fr < simplex[n - 1].f) {
      candidate = {trial, fr};
      accepted = true;
    } else if (fr < simplex.back().f) {
      point(reflect * contract, trial2);
      const double fc = checked(f, trial2);
      ++run.evaluations;
      if (fc <= fr) {
        candidate = {trial2, fc};
        accepted = true;
      }
    } else {
      point(-contract, trial2);
      const double fc = checked(f, trial2);
      ++run.evaluations;
      if (fc < simplex.back().f) {
        candidate = {trial2, fc};
        accepted = true;
      }
    }

    if (accepted) {
      for (std::size_t i = 0; i < n; ++i) vertex_sum[i] += candidate.x[i] - simplex.back().x[i];
      simplex.back() = std::move(candidate);
      // insertion keeps the simplex sorted; ties go after existing vertices
      auto it = std::upper_bound(simplex.begin(), simplex.end() - 1, simplex.back(), by_value);
      std::rotate(it, simplex.end() - 1, simplex.end());
    } else {
      const auto& best = simplex.front().x;
      for (std::size_t v = 1; v <= n; ++v) {
        for (std::size_t i = 0; i < n; ++i) simplex[v].x[i] = best[i] + shrink * (simplex[v].x[i] - best[i]);
        simplex[v].f = checked(f, simplex[v].x);
        ++run.evaluations;
      }
      std::stable_sort(simplex.begin(), simplex.end(), by_value);
      recompute_sum();
    }
  }
  run.best = simplex.front();
  return run;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts < 1) throw Error(ErrorKind::InvalidInput, "restarts must be >= 1");
  if (max_iters < 1) throw Error(ErrorKind::InvalidInput, "max_iters must be >= 1");
  if (!(objective_tol > 0.0)) throw Error(ErrorKind::InvalidInput, "objective_tol must be > 0");
  if (!(simplex_init_scale > 0.0)) throw Error(ErrorKind::InvalidInput, "simplex_init_scale must be > 0");
}

std::uint64_t restart_seed(std::uint64_t master_seed, std::uint64_t r) {
  return splitmix64(master_seed ^ splitmix64(r + 0x5851F42D4C957F2DULL));
}

LocalResult nelder_mead(const Objective& objective, std::vector<double> start, double init_scale,
                        std::size_t max_iters, double tol) {
  LocalResult out;
  out.value = checked(objective, start);
  out.evaluations = 1;
  out.params = std::move(start);
  if (out.params.empty()) {
    out.converged = true;
    return out;
  }
  std::size_t remaining = max_iters;
  while (remaining > 0) {
    SimplexRun run = run_simplex(objective, out.params, out.value, init_scale, remaining, tol);
    out.evaluations += run.evaluations;
    remaining -= std::min(remaining, std::max<std::size_t>(run.iterations, 1));
    const double gain = out.value - run.best.f;
    out.converged = run.converged;
    if (run.best.f < out.value) {
      out.value = run.best.f;
      out.params = std::move(run.best.x);
    }
    // a fresh simplex around the incumbent that brings nothing ends the descent
    if (gain < tol) break;
  }
  return out;
}

OptReport optimize_scalar(const Objective& objective, std::size_t param_count, Direction direction,
                          const OptimizerConfig& config) {
  return optimize_staged({Stage{param_count, objective, {}}}, direction, config);
}

OptReport optimize_staged(const std::vector<Stage>& stages, Direction direction, const OptimizerConfig& config) {
  return optimize_portfolio({stages}, direction, config);
}

OptReport optimize_portfolio(const std::vector<std::vector<Stage>>& ladders, Direction direction,
                             const OptimizerConfig& config, std::size_t final_stage_top) {
  config.validate();
  if (ladders.empty()) throw Error(ErrorKind::InvalidInput, "no optimization ladders");
  for (const auto& stages : ladders) {
    if (stages.empty()) throw Error(ErrorKind::InvalidInput, "no optimization stages");
    if (stages.back().param_count != ladders.front().back().param_count) {
      throw Error(ErrorKind::InvalidInput, "ladders end in different parameter spaces");
    }
  }
  const double sign = direction == Direction::Maximize ? -1.0 : 1.0;
  std::vector<std::vector<Objective>> minimized;
  for (const auto& stages : ladders) {
    auto& m = minimized.emplace_back();
    for (const auto& stage : stages) {
      m.push_back([&stage, sign](std::span<const double> x) { return sign * stage.objective(x); });
    }
  }

  const std::size_t restarts = config.restarts;
  std::vector<LocalResult> results(restarts);
  std::vector<std::exception_ptr> errors(restarts);
  // Descends restart r through stages [first, last) of its ladder; a lifted
  // stage without `descend` only carries the point over.
  auto run_stages = [&](std::size_t r, bool final_phase, bool descend) {
    try {
      const auto& stages = ladders[r % ladders.size()];
      const auto& objectives = minimized[r % ladders.size()];
      const bool split = final_stage_top > 0 && stages.size() > 1;
      const std::size_t first = final_phase ? stages.size() - 1 : 0;
      const std::size_t last = final_phase || !split ? stages.size() : stages.size() - 1;
      LocalResult& result = results[r];
      std::vector<double> start;
      if (first == 0) {
        std::mt19937_64 rng(restart_seed(config.master_seed, r));
        start.resize(stages.front().param_count);
        for (auto& x : start) x = std::numbers::pi * (2.0 * uniform01(rng) - 1.0);
      }
      for (std::size_t s = first; s < last; ++s) {
        if (s > 0) start = stages[s].lift ? stages[s].lift(result.params) : result.params;
        const std::size_t evaluations = result.evaluations;
        if (descend) {
          result = nelder_mead(objectives[s], std::move(start), config.simplex_init_scale * stages[s].scale_factor,
                               config.max_iters, config.objective_tol);
        } else {
          result.value = checked(objectives[s], start);
          result.evaluations = 1;
          result.params = std::move(start);
        }
        result.evaluations += evaluations;
      }
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };
  auto run_all = [&](const std::function<void(std::size_t)>& job) {
    const std::size_t workers =
        config.parallel ? std::min<std::size_t>(restarts, std::max(1u, std::thread::hardware_concurrency())) : 1;
    if (workers <= 1) {
      for (std::size_t r = 0; r < restarts; ++r) job(r);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t r = w; r < restarts; r += workers) job(r);
        });
      }
      for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  };

  run_all([&](std::size_t r) { run_stages(r, false, true); });
  if (final_stage_top > 0) {
    // only the best restarts (ties to the lower index) are refined in the
    // last stage; the others are carried over unchanged
    std::vector<std::size_t> order(restarts);
    for (std::size_t r = 0; r < restarts; ++r) order[r] = r;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return results[a].value < results[b].value; });
    std::vector<bool> refine(restarts, false);
    for (std::size_t i = 0; i < std::min(final_stage_top, restarts); ++i) refine[order[i]] = true;
    run_all([&](std::size_t r) {
      if (ladders[r % ladders.size()].size() > 1) run_stages(r, true, refine[r]);
    });
  }

  OptReport report;
  for (std::size_t r = 0; r < restarts; ++r) {
    report.per_restart_values.push_back(sign * results[r].value);
    report.evaluations += results[r].evaluations;
    if (results[r].value < results[report.best_restart].value) report.best_restart = r;
  }
  const auto& best = results[report.best_restart];
  report.best_value = sign * best.value;
  report.best_params = best.params;
  report.converged = best.converged;
  return report;
}

}  // namespace renyikw
