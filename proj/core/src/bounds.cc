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

#include "polyfeas/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "polyfeas/error.hpp"

namespace polyfeas {
namespace {

constexpr std::int64_t kHittingShards = 64;

double ratio_squared(const BoundInputs& in) {
  const double r = in.lipschitz * in.dist0 / in.eps;
  return r * r;
}

double growth_factor_squared(const BoundInputs& in, const GrowthProfile& g) {
  const double f = in.lipschitz /
                   (std::pow(g.mu, 1.0 / g.degree) * std::pow(in.eps, 1.0 - 1.0 / g.degree));
  return f * f;
}

void require_growth_applies(const BoundInputs& in, const GrowthProfile& g) {
  validate(g);
  require(in.gamma < g.delta_mass, ErrorCode::kPrecondition,
          "growth bounds need gamma < delta_mass (gamma=" + std::to_string(in.gamma) +
              ", delta_mass=" + std::to_string(g.delta_mass) + ")");
}

struct ShardResult {
  std::vector<std::uint64_t> histogram;
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
};

ShardResult run_shard(std::int64_t target, double p, std::int64_t trials, Rng rng) {
  ShardResult out;
  std::bernoulli_distribution step(p);
  for (std::int64_t t = 0; t < trials; ++t) {
    std::int64_t level = 0;
    std::int64_t k = 0;
    while (level < target) {
      ++k;
      if (step(rng)) ++level;
    }
    const auto idx = static_cast<std::size_t>(k);
    if (out.histogram.size() <= idx) out.histogram.resize(idx + 1, 0);
    ++out.histogram[idx];
    out.sum += static_cast<long double>(k);
    out.sum_sq += static_cast<long double>(k) * static_cast<long double>(k);
  }
  return out;
}

}  // namespace

void validate(const BoundInputs& in) {
  require(in.lipschitz > 0.0 && std::isfinite(in.lipschitz), ErrorCode::kInvalidArgument,
          "M must be positive and finite");
  require(in.dist0 > 0.0 && std::isfinite(in.dist0), ErrorCode::kInvalidArgument,
          "dist0 must be positive and finite");
  require(in.eps > 0.0, ErrorCode::kInvalidArgument, "eps must be positive");
  require(in.gamma > 0.0 && in.gamma < 1.0, ErrorCode::kInvalidArgument,
          "gamma must lie in (0, 1)");
  require(in.batch_size >= 1, ErrorCode::kInvalidArgument, "batch size must be >= 1");
  require(in.eps < in.lipschitz * in.dist0, ErrorCode::kPrecondition,
          "eps >= M * dist0: x0 already achieves the goal");
}

void validate(const GrowthProfile& g) {
  require(g.mu > 0.0, ErrorCode::kInvalidArgument, "growth mu must be positive");
  require(g.degree >= 1.0, ErrorCode::kInvalidArgument, "growth degree must be >= 1");
  require(g.delta_mass > 0.0 && g.delta_mass <= 1.0, ErrorCode::kInvalidArgument,
          "growth delta_mass must lie in (0, 1]");
}

double success_prob(double gamma, std::int64_t batch_size) {
  require(gamma > 0.0 && gamma < 1.0, ErrorCode::kInvalidArgument, "gamma must lie in (0, 1)");
  require(batch_size >= 1, ErrorCode::kInvalidArgument, "batch size must be >= 1");
  return -std::expm1(static_cast<double>(batch_size) * std::log1p(-gamma));
}

double success_prob(const BoundInputs& inputs) {
  return success_prob(inputs.gamma, inputs.batch_size);
}

std::int64_t deterministic_budget(const BoundInputs& inputs) {
  validate(inputs);
  return static_cast<std::int64_t>(std::floor(ratio_squared(inputs)));
}

double expected_iters_basic(const BoundInputs& inputs) {
  validate(inputs);
  return ratio_squared(inputs) / success_prob(inputs);
}

double concentration_tail(double expected_iters, double p, std::int64_t k) {
  require(p > 0.0 && p <= 1.0, ErrorCode::kInvalidArgument, "p must lie in (0, 1]");
  require(expected_iters > 0.0, ErrorCode::kInvalidArgument, "expected iterations must be > 0");
  require(static_cast<double>(k) >= 2.0 * expected_iters, ErrorCode::kPrecondition,
          "concentration tail needs k >= 2E");
  const auto start = static_cast<std::int64_t>(std::ceil(2.0 * expected_iters));
  const double base = p >= 1.0 ? 0.0 : 1.0 / (1.0 + 0.5 * p / (1.0 - p));
  return 0.5 * std::pow(base, static_cast<double>(k - start));
}

double concentration_tail(const BoundInputs& inputs, std::int64_t k) {
  return concentration_tail(expected_iters_basic(inputs), success_prob(inputs), k);
}

double growth_min_term(const BoundInputs& inputs, double degree) {
  validate(inputs);
  require(degree >= 1.0, ErrorCode::kInvalidArgument, "growth degree must be >= 1");
  const double log_term = std::log2(inputs.lipschitz * inputs.dist0 / inputs.eps);
  const double denom = std::pow(4.0, 1.0 - 1.0 / degree) - 1.0;
  if (denom <= 0.0) return log_term;
  return std::min(1.0 / denom, log_term);
}

double expected_iters_growth(const BoundInputs& inputs, const GrowthProfile& growth) {
  validate(inputs);
  require_growth_applies(inputs, growth);
  const double inner =
      1.0 + growth_factor_squared(inputs, growth) * growth_min_term(inputs, growth.degree);
  return 4.0 / success_prob(inputs) * inner;
}

ConfidentBounds confident_iter_bounds(const BoundInputs& inputs,
                                      const std::optional<GrowthProfile>& growth) {
  ConfidentBounds out;
  out.basic = 1 + deterministic_budget(inputs);
  if (growth) {
    require_growth_applies(inputs, *growth);
    out.growth = 5.0 + 4.0 * growth_factor_squared(inputs, *growth) *
                           growth_min_term(inputs, growth->degree);
  }
  return out;
}

double HittingTimeStats::first_hit_probability(std::int64_t k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= histogram.size() || trials == 0) return 0.0;
  return static_cast<double>(histogram[static_cast<std::size_t>(k)]) /
         static_cast<double>(trials);
}

HittingTimeStats simulate_hitting_time(std::int64_t target, double p, std::int64_t trials,
                                       Rng& rng, int workers) {
  require(target >= 1, ErrorCode::kInvalidArgument, "hitting target N must be >= 1");
  require(p > 0.0 && p <= 1.0, ErrorCode::kInvalidArgument, "p must lie in (0, 1]");
  require(trials >= 1, ErrorCode::kInvalidArgument, "trials must be >= 1");
  const std::uint64_t base = rng();

  std::vector<ShardResult> shards(static_cast<std::size_t>(kHittingShards));
  std::atomic<std::int64_t> next{0};
  auto work = [&]() {
    for (std::int64_t s = next++; s < kHittingShards; s = next++) {
      const std::int64_t lo = trials * s / kHittingShards;
      const std::int64_t hi = trials * (s + 1) / kHittingShards;
      shards[static_cast<std::size_t>(s)] =
          run_shard(target, p, hi - lo, derive_stream(base, static_cast<std::uint64_t>(s)));
    }
  };
  const int threads = std::clamp(workers, 1, static_cast<int>(kHittingShards));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  HittingTimeStats out;
  out.target = target;
  out.p = p;
  out.trials = trials;
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  for (const ShardResult& shard : shards) {
    if (out.histogram.size() < shard.histogram.size()) {
      out.histogram.resize(shard.histogram.size(), 0);
    }
    for (std::size_t k = 0; k < shard.histogram.size(); ++k) out.histogram[k] += shard.histogram[k];
    sum += shard.sum;
    sum_sq += shard.sum_sq;
  }
  const auto n = static_cast<long double>(trials);
  const long double mean = sum / n;
  out.mean = static_cast<double>(mean);
  out.variance = trials > 1 ? static_cast<double>((sum_sq - n * mean * mean) / (n - 1.0L)) : 0.0;
  return out;
}

}  // namespace polyfeas
