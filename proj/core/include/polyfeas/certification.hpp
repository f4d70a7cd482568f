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

#ifndef POLYFEAS_CERTIFICATION_HPP_
#define POLYFEAS_CERTIFICATION_HPP_

// Coverage oracles for P(Omega(x, eps)), Omega(x, eps) = {w : f_w(x) <= eps}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "polyfeas/constraint.hpp"
#include "polyfeas/types.hpp"

namespace polyfeas {

struct CoverageQuery {
  Vector x;
  double eps = 0.0;
  std::optional<double> gamma;
};

// Coverage comparisons tolerate 1e-9 of floating-point slack on the
// probability scale, so exact counts such as 900/1000 meet 1 - 0.1.
inline constexpr double kCoverageSlack = 1e-9;

bool meets_coverage(double coverage, double gamma);

// Smallest count c with c / m meeting 1 - gamma.
std::size_t required_count(std::size_t m, double gamma);

// f_i(x) for every element of a finite family, in index order.
std::vector<double> residuals(const ConstraintFamily& family, const Vector& x);

// Exactly #{i : f_i(x) <= eps} / m. Finite families only.
double coverage_exact(const ConstraintFamily& family, const CoverageQuery& query);

struct WilsonInterval {
  double lower = 0.0;
  double upper = 1.0;
};

// Two-sided Wilson score interval; z defaults to the 95% normal quantile.
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials,
                               double z = 1.959963984540054);

struct CoverageEstimate {
  double estimate = 0.0;
  WilsonInterval interval;
  std::int64_t hits = 0;
  std::int64_t trials = 0;
};

// Monte-Carlo coverage from `trials` i.i.d. draws of P; reproducible per rng state.
CoverageEstimate coverage_mc(const ConstraintFamily& family, const CoverageQuery& query,
                             std::int64_t trials, Rng& rng);

// The ceil((1 - gamma) m)-th smallest residual at x: the least eps whose
// exact coverage meets 1 - gamma.
double residual_quantile(const ConstraintFamily& family, const Vector& x, double gamma);

}  // namespace polyfeas

#endif  // POLYFEAS_CERTIFICATION_HPP_
