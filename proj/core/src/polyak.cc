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

#include "polyfeas/polyak.hpp"

#include <cmath>
#include <string>

#include "polyfeas/error.hpp"

namespace polyfeas {

void validate(const StepParams& params) {
  require(params.delta > 0.0 && params.delta < 2.0, ErrorCode::kInvalidArgument,
          "step delta must lie in (0, 2), got " + std::to_string(params.delta));
}

void validate(const ProjectionRegion& region, Eigen::Index dimension) {
  if (const auto* box = std::get_if<BoxRegion>(&region)) {
    require(box->lo.size() == dimension && box->hi.size() == dimension,
            ErrorCode::kDimensionMismatch, "box region bounds must match the dimension");
    require((box->lo.array() <= box->hi.array()).all(), ErrorCode::kInvalidArgument,
            "box region needs lo <= hi in every coordinate");
  } else if (const auto* ball = std::get_if<BallRegion>(&region)) {
    require(ball->center.size() == dimension, ErrorCode::kDimensionMismatch,
            "ball region center must match the dimension");
    require(ball->radius >= 0.0 && std::isfinite(ball->radius), ErrorCode::kInvalidArgument,
            "ball region radius must be finite and nonnegative");
  }
}

Vector polyak_step(const Vector& x, double value, const Vector& g, const StepParams& params) {
  if (!(value > 0.0)) return x;
  require(g.size() == x.size(), ErrorCode::kDimensionMismatch,
          "subgradient and point dimensions differ");
  const double g2 = g.squaredNorm();
  if (g2 == 0.0) {
    fail(ErrorCode::kInfeasibleConstraint,
         "positive residual " + std::to_string(value) +
             " with zero subgradient: the sampled constraint has no feasible point");
  }
  return x - (params.delta * value / g2) * g;
}

bool check_decrease(const Vector& x, const Vector& x_plus, const Vector& z, double value,
                    const Vector& g, double delta) {
  const double ratio = value / g.norm();
  const double lhs = (x_plus - z).squaredNorm();
  const double rhs = (x - z).squaredNorm() - delta * (2.0 - delta) * ratio * ratio;
  return lhs <= rhs + 1e-9;
}

Vector project(const ProjectionRegion& region, const Vector& x) {
  if (const auto* box = std::get_if<BoxRegion>(&region)) {
    return x.cwiseMax(box->lo).cwiseMin(box->hi);
  }
  if (const auto* ball = std::get_if<BallRegion>(&region)) {
    Vector d = x - ball->center;
    const double norm = d.norm();
    if (norm <= ball->radius) return x;
    return ball->center + (ball->radius / norm) * d;
  }
  return x;
}

}  // namespace polyfeas
