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

#include "polyfeas/certification.hpp"

#include <algorithm>
#include <cmath>

#include "polyfeas/error.hpp"

namespace polyfeas {
namespace {

void require_gamma(double gamma) {
  require(gamma > 0.0 && gamma < 1.0, ErrorCode::kInvalidArgument, "gamma must lie in (0, 1)");
}

}  // namespace

bool meets_coverage(double coverage, double gamma) {
  return coverage >= (1.0 - gamma) - kCoverageSlack;
}

std::size_t required_count(std::size_t m, double gamma) {
  const double md = static_cast<double>(m);
  const double need = std::ceil((1.0 - gamma) * md - kCoverageSlack * md);
  return static_cast<std::size_t>(std::clamp(need, 0.0, md));
}

std::vector<double> residuals(const ConstraintFamily& family, const Vector& x) {
  require(family.is_finite(), ErrorCode::kUnsupported, "residuals need a finite family");
  require(x.size() == family.dimension(), ErrorCode::kDimensionMismatch,
          "point dimension does not match family");
  std::vector<double> out;
  out.reserve(family.size());
  for (const Constraint& c : family.constraints()) out.push_back(c.value(x));
  return out;
}

double coverage_exact(const ConstraintFamily& family, const CoverageQuery& query) {
  require(family.is_finite(), ErrorCode::kUnsupported,
          "exact coverage needs a finite family; use coverage_mc");
  const std::vector<double> r = residuals(family, query.x);
  const auto covered = std::count_if(r.begin(), r.end(), [&](double v) { return v <= query.eps; });
  return static_cast<double>(covered) / static_cast<double>(r.size());
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  require(trials >= 1, ErrorCode::kInvalidArgument, "Wilson interval needs trials >= 1");
  require(successes >= 0 && successes <= trials, ErrorCode::kInvalidArgument,
          "successes must lie in [0, trials]");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = (z / denom) * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

CoverageEstimate coverage_mc(const ConstraintFamily& family, const CoverageQuery& query,
                             std::int64_t trials, Rng& rng) {
  require(trials >= 1, ErrorCode::kInvalidArgument, "coverage_mc needs trials >= 1");
  require(query.x.size() == family.dimension(), ErrorCode::kDimensionMismatch,
          "point dimension does not match family");
  std::int64_t hits = 0;
  // Draw in chunks to bound memory for large trial counts.
  constexpr std::int64_t kChunk = 4096;
  for (std::int64_t done = 0; done < trials; done += kChunk) {
    const std::int64_t count = std::min(kChunk, trials - done);
    const SampleBatch batch = sample_batch(family, rng, count);
    for (const Sample& s : batch.samples) {
      if (evaluate(family, s, query.x) <= query.eps) ++hits;
    }
  }
  CoverageEstimate out;
  out.hits = hits;
  out.trials = trials;
  out.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  out.interval = wilson_interval(hits, trials);
  return out;
}

double residual_quantile(const ConstraintFamily& family, const Vector& x, double gamma) {
  require_gamma(gamma);
  std::vector<double> r = residuals(family, x);
  const std::size_t rank = std::max<std::size_t>(1, required_count(r.size(), gamma));
  std::nth_element(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(rank - 1), r.end());
  return r[rank - 1];
}

}  // namespace polyfeas
