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

#ifndef POLYFEAS_POLYAK_HPP_
#define POLYFEAS_POLYAK_HPP_

#include <variant>

#include "polyfeas/types.hpp"

namespace polyfeas {

// Extrapolation factor for the Polyak step, 0 < delta < 2. delta = 1 is the
// exact Polyak step; other values shrink the guaranteed squared-distance
// decrease by the factor delta * (2 - delta).
struct StepParams {
  double delta = 1.0;
};

void validate(const StepParams& params);

struct NoRegion {};

struct BoxRegion {
  Vector lo;
  Vector hi;
};

struct BallRegion {
  Vector center;
  double radius = 0.0;
};

// Closed convex set Y with a closed-form Euclidean projection.
using ProjectionRegion = std::variant<NoRegion, BoxRegion, BallRegion>;

void validate(const ProjectionRegion& region, Eigen::Index dimension);

// x - delta * value / |g|^2 * g when value > 0, x unchanged otherwise.
// value > 0 with g = 0 raises kInfeasibleConstraint: the constraint attains
// its minimum at x and that minimum is positive.
Vector polyak_step(const Vector& x, double value, const Vector& g, const StepParams& params = {});

// Test oracle for the per-step squared distance decrease:
//   |x_plus - z|^2 <= |x - z|^2 - delta (2 - delta) (value / |g|)^2 + 1e-9.
bool check_decrease(const Vector& x, const Vector& x_plus, const Vector& z, double value,
                    const Vector& g, double delta = 1.0);

Vector project(const ProjectionRegion& region, const Vector& x);

}  // namespace polyfeas

#endif  // POLYFEAS_POLYAK_HPP_
