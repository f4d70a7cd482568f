// Copyright 2026 The polyfeas Authors
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

#ifndef POLYFEAS_BOUNDS_HPP_
#define POLYFEAS_BOUNDS_HPP_

// Closed-form iteration bounds for the Polyak feasibility methods, and a
// simulator for the compound Bernoulli hitting time behind them.
//
// Notation: M bounds subgradient norms near the iterates, dist0 is the
// distance from x0 to the feasible set, eps the residual target, gamma the
// mass that may be ignored and L the minibatch size. p = 1 - (1 - gamma)^L is
// the per-iteration chance that some sample lands in the violated mass.

#include <cstdint>
#include <optional>
#include <vector>

#include "polyfeas/types.hpp"

namespace polyfeas {

struct BoundInputs {
  double lipschitz = 1.0;  // M
  double dist0 = 1.0;
  double eps = 0.1;
  double gamma = 0.1;
  std::int64_t batch_size = 1;  // L
};

// Mass-form Hoelderian growth: at every exterior point of the working ball a
// mass of at least delta_mass of constraints satisfies f >= mu * dist^degree.
struct GrowthProfile {
  double mu = 1.0;
  double degree = 1.0;
  double delta_mass = 1.0;
};

// Throws kPrecondition when eps >= M * dist0 (x0 already achieves the goal)
// and kInvalidArgument for out-of-range fields.
void validate(const BoundInputs& inputs);
void validate(const GrowthProfile& growth);

double success_prob(double gamma, std::int64_t batch_size);
double success_prob(const BoundInputs& inputs);

// N = floor((M dist0 / eps)^2): the most iterations that can have a sample
// maximum residual of at least eps.
std::int64_t deterministic_budget(const BoundInputs& inputs);

// E = (1/p) (M dist0 / eps)^2.
double expected_iters_basic(const BoundInputs& inputs);

// 1/2 * (1 / (1 + p / (2 (1 - p))))^(k - ceil(2E)) for k >= 2E.
double concentration_tail(double expected_iters, double p, std::int64_t k);
double concentration_tail(const BoundInputs& inputs, std::int64_t k);

// min{1 / (4^(1 - 1/d) - 1), log2(M dist0 / eps)}; the first branch is
// +infinity for d = 1.
double growth_min_term(const BoundInputs& inputs, double degree);

// E' = (4/p) (1 + (M / (mu^(1/d) eps^(1 - 1/d)))^2 * min{...}). Needs gamma < delta_mass.
double expected_iters_growth(const BoundInputs& inputs, const GrowthProfile& growth);

struct ConfidentBounds {
  std::int64_t basic = 0;         // 1 + floor((M dist0 / eps)^2)
  std::optional<double> growth;   // 5 + 4 (M / (mu^(1/d) eps^(1-1/d)))^2 * min{...}
};

ConfidentBounds confident_iter_bounds(const BoundInputs& inputs,
                                      const std::optional<GrowthProfile>& growth);

struct HittingTimeStats {
  std::int64_t target = 0;  // N
  double p = 0.0;
  std::int64_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  // histogram[k] = number of trials absorbed at exactly step k.
  std::vector<std::uint64_t> histogram;

  double first_hit_probability(std::int64_t k) const;
};

// Simulates Y_0 = 0, Y_k = Y_{k-1} + Bernoulli(p) until Y reaches N. Trials
// are split across a fixed set of shards with derived streams, so the result
// depends only on the rng state and not on `workers`.
HittingTimeStats simulate_hitting_time(std::int64_t target, double p, std::int64_t trials,
                                       Rng& rng, int workers = 1);

}  // namespace polyfeas

#endif  // POLYFEAS_BOUNDS_HPP_
