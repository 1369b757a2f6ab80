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


#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "renyikw/optimize.hpp"
#include "renyikw/types.hpp"

namespace {

using namespace renyikw;

double neg_squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return -s;
}

bool identical(const OptReport& a, const OptReport& b) {
  return a.best_value == b.best_value && a.best_params == b.best_params &&
         a.per_restart_values == b.per_restart_values && a.best_restart == b.best_restart &&
         a.evaluations == b.evaluations && a.converged == b.converged;
}

TEST_CASE("closed-form optima") {
  const OptimizerConfig config;
  SUBCASE("unique smooth maximum") {
    for (std::size_t n : {1, 3, 8}) {
      const OptReport r = optimize_scalar(neg_squared_norm, n, Direction::Maximize, config);
      CHECK(r.best_value > -1e-6);
      CHECK(r.best_value <= 0.0);
    }
  }
  SUBCASE("constant objective") {
    const OptReport r = optimize_scalar([](std::span<const double>) { return 7.0; }, 4, Direction::Minimize, config);
    CHECK(r.best_value == 7.0);
    CHECK(r.converged);
  }
  SUBCASE("sin against a grid oracle") {
    // oracle: dense grid over [-pi, pi]
    double grid_max = -2.0;
    for (int k = 0; k <= 200000; ++k) grid_max = std::max(grid_max, std::sin(-std::numbers::pi + k * 2e-5 * std::numbers::pi));
    OptimizerConfig c;
    c.restarts = 4;
    const OptReport r = optimize_scalar([](std::span<const double> x) { return std::sin(x[0]); }, 1,
                                        Direction::Maximize, c);
    CHECK(std::abs(r.best_value - grid_max) < 1e-6);
    CHECK(std::abs(r.best_value - 1.0) < 1e-6);
  }
  SUBCASE("Rosenbrock valley") {
    const auto rosen = [](std::span<const double> x) {
      return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    const OptReport r = optimize_scalar(rosen, 2, Direction::Minimize, config);
    CHECK(r.best_value < 1e-8);
    CHECK(std::abs(r.best_params[0] - 1.0) < 1e-3);
  }
}

TEST_CASE("report contract") {
  OptimizerConfig config;
  config.restarts = 8;
  config.master_seed = 42;
  const auto f = [](std::span<const double> x) { return std::cos(3.0 * x[0]) * std::sin(2.0 * x[1]) + 0.1 * x[0]; };
  const OptReport r = optimize_scalar(f, 2, Direction::Maximize, config);
  CHECK(r.per_restart_values.size() == 8);
  CHECK(r.best_value == *std::max_element(r.per_restart_values.begin(), r.per_restart_values.end()));
  CHECK(r.best_value == r.per_restart_values[r.best_restart]);
  CHECK(f(r.best_params) == r.best_value);
  // lowest restart index wins ties
  for (std::size_t i = 0; i < r.best_restart; ++i) CHECK(r.per_restart_values[i] < r.best_value);

  SUBCASE("determinism, serial and parallel") {
    const OptReport again = optimize_scalar(f, 2, Direction::Maximize, config);
    CHECK(identical(r, again));
    config.parallel = true;
    CHECK(identical(r, optimize_scalar(f, 2, Direction::Maximize, config)));
  }
  SUBCASE("monotone budget") {
    config.restarts = 64;
    const OptReport big = optimize_scalar(f, 2, Direction::Maximize, config);
    CHECK(big.best_value >= r.best_value - 1e-12);
  }
  SUBCASE("seed changes the starts") {
    config.master_seed = 43;
    CHECK(optimize_scalar(f, 2, Direction::Maximize, config).per_restart_values != r.per_restart_values);
  }
}

TEST_CASE("restart seeds") {
  CHECK(restart_seed(0, 0) != restart_seed(0, 1));
  CHECK(restart_seed(0, 1) != restart_seed(1, 1));
  CHECK(restart_seed(5, 7) == restart_seed(5, 7));
}

TEST_CASE("errors") {
  OptimizerConfig config;
  SUBCASE("non-finite objective") {
    const auto bad = [](std::span<const double> x) {
      return x[0] > 0.0 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    };
    try {
      optimize_scalar(bad, 1, Direction::Minimize, config);
      FAIL("expected NonFiniteObjective");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonFiniteObjective);
    }
    config.parallel = true;
    CHECK_THROWS_AS(optimize_scalar(bad, 1, Direction::Minimize, config), Error);
  }
  SUBCASE("invalid configs") {
    config.restarts = 0;
    CHECK_THROWS_AS(optimize_scalar(neg_squared_norm, 1, Direction::Maximize, config), Error);
    config.restarts = 1;
    config.objective_tol = 0.0;
    CHECK_THROWS_AS(optimize_scalar(neg_squared_norm, 1, Direction::Maximize, config), Error);
    config.objective_tol = 1e-8;
    config.max_iters = 0;
    CHECK_THROWS_AS(optimize_scalar(neg_squared_norm, 1, Direction::Maximize, config), Error);
  }
}

TEST_CASE("staged search") {
  // stage 0 on (x), stage 1 on (x, y) started from (x*, 0)
  const std::vector<Stage> stages{
      {1, [](std::span<const double> x) { return std::pow(x[0] - 1.0, 2); }, {}},
      {2, [](std::span<const double> x) { return std::pow(x[0] - 1.0, 2) + std::pow(x[1] + 0.5, 2); },
       [](std::span<const double> x) { return std::vector<double>{x[0], 0.0}; }, 0.5},
  };
  OptimizerConfig config;
  config.restarts = 3;
  const OptReport r = optimize_staged(stages, Direction::Minimize, config);
  CHECK(r.best_params.size() == 2);
  CHECK(r.best_value < 1e-8);
  CHECK(std::abs(r.best_params[1] + 0.5) < 1e-3);
  CHECK_THROWS_AS(optimize_staged({}, Direction::Minimize, config), Error);
}

TEST_CASE("portfolio search") {
  const auto lift = [](std::span<const double> x) { return std::vector<double>{x[0], 0.0}; };
  const auto final_objective = [](std::span<const double> x) {
    return std::pow(x[0] - 1.0, 2) + std::pow(x[1] + 0.5, 2);
  };
  // the first ladder warms up on a decoy minimum at x = -1
  const std::vector<Stage> decoy{{1, [](std::span<const double> x) { return std::pow(x[0] + 1.0, 2); }, {}},
                                 {2, final_objective, lift, 0.5}};
  const std::vector<Stage> direct{{1, [](std::span<const double> x) { return std::pow(x[0] - 1.0, 2); }, {}},
                                  {2, final_objective, lift, 0.5}};
  OptimizerConfig config;
  config.restarts = 6;
  const OptReport all = optimize_portfolio({decoy, direct}, Direction::Minimize, config);
  CHECK(all.per_restart_values.size() == 6);
  CHECK(all.best_value < 1e-8);
  CHECK(all.best_restart % 2 == 1);

  // with one refined restart the others keep their lifted values: 0.25 for the
  // direct ladder, 4.25 for the decoy one
  const OptReport top = optimize_portfolio({decoy, direct}, Direction::Minimize, config, 1);
  CHECK(top.best_value < 1e-8);
  int refined = 0;
  for (std::size_t r = 0; r < 6; ++r) {
    const double v = top.per_restart_values[r];
    if (v < 1e-8) ++refined;
    else CHECK(std::abs(v - (r % 2 == 0 ? 4.25 : 0.25)) < 1e-6);
  }
  CHECK(refined == 1);

  const std::vector<Stage> short_ladder{{2, final_objective, {}}};
  const std::vector<Stage> other_space{{3, final_objective, {}}};
  CHECK_THROWS_AS(optimize_portfolio({short_ladder, other_space}, Direction::Minimize, config), Error);
  CHECK_THROWS_AS(optimize_portfolio({}, Direction::Minimize, config), Error);
}

TEST_CASE("nelder_mead budget") {
  const auto quad = [](std::span<const double> x) { return x[0] * x[0] + 10.0 * x[1] * x[1]; };
  const LocalResult few = nelder_mead(quad, {2.0, 2.0}, 0.3, 5, 1e-12);
  const LocalResult many = nelder_mead(quad, {2.0, 2.0}, 0.3, 2000, 1e-12);
  CHECK(few.value >= many.value);
  CHECK(many.value < 1e-10);
  CHECK(nelder_mead([](std::span<const double>) { return 1.0; }, {}, 0.3, 10, 1e-8).converged);
}

}  // namespace
