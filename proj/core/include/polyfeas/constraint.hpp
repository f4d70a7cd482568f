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

#ifndef POLYFEAS_CONSTRAINT_HPP_
#define POLYFEAS_CONSTRAINT_HPP_

// Convex constraint catalog and the sample space (Omega, P) over it.
//
// Every constraint is built from a closed catalog so convexity holds by
// construction:
//   affine          f(x) = a.x + b
//   ball distance   f(x) = |x - c| - r
//   quadratic       f(x) = x.Qx + a.x + b,  Q symmetric positive semidefinite
//   pointwise max   f(x) = max_j piece_j(x), pieces drawn from the three above
//
// A family is either finite with the uniform measure (each element has
// probability exactly 1/m) or parametric: a template constraint whose
// coefficient vector is drawn from a uniform box or a Gaussian.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "polyfeas/types.hpp"

namespace polyfeas {

struct AffineConstraint {
  Vector a;
  double b = 0.0;
};

struct BallDistanceConstraint {
  Vector center;
  double radius = 0.0;
};

struct QuadraticConstraint {
  Matrix q;  // symmetric PSD
  Vector a;
  double b = 0.0;
};

using SimpleConstraint =
    std::variant<AffineConstraint, BallDistanceConstraint, QuadraticConstraint>;

struct MaxConstraint {
  std::vector<SimpleConstraint> pieces;
};

enum class ConstraintKind { kAffine, kBallDistance, kQuadratic, kMax };

std::string_view to_string(ConstraintKind kind);

class Constraint {
 public:
  using Body = std::variant<AffineConstraint, BallDistanceConstraint,
                            QuadraticConstraint, MaxConstraint>;

  static Constraint affine(Vector a, double b);
  static Constraint ball_distance(Vector center, double radius);
  // Q is symmetrized; throws kInvalidArgument if it is not PSD.
  static Constraint quadratic(Matrix q, Vector a, double b);
  // |x - c|^2 - r^2 as a quadratic.
  static Constraint squared_ball(const Vector& center, double radius);
  static Constraint max_of(std::vector<Constraint> pieces);

  Eigen::Index dimension() const { return dimension_; }
  ConstraintKind kind() const;
  const Body& body() const { return body_; }

  double value(const Vector& x) const;

  // Deterministic subgradient selection: the gradient where differentiable,
  // the zero vector at a ball-distance center, and the lowest-indexed
  // maximizing piece for pointwise max.
  Vector subgradient(const Vector& x) const;

  // Adds `shift` to the constant term (for max: to every piece). Used by
  // generators to move a known point onto or inside the zero level set.
  Constraint shifted(double shift) const;

 private:
  Constraint(Body body, Eigen::Index dimension)
      : body_(std::move(body)), dimension_(dimension) {}

  Body body_;
  Eigen::Index dimension_;
};

enum class TemplateKind { kAffine, kBallDistance };
enum class DistributionKind { kUniformBox, kGaussian };

std::string_view to_string(TemplateKind kind);
std::string_view to_string(DistributionKind kind);

// Parameter layout: affine -> [a_1..a_n, b]; ball distance -> [c_1..c_n, r].
// Uniform box draws theta_i in [center_i - scale_i, center_i + scale_i];
// Gaussian draws theta_i ~ N(center_i, scale_i^2).
struct ParametricSpec {
  TemplateKind kind = TemplateKind::kAffine;
  DistributionKind distribution = DistributionKind::kUniformBox;
  Vector center;
  Vector scale;
  // Affine only: divide (a, b) by |a| so the normal is a unit vector.
  bool normalize_normal = false;
};

struct WorkingBall {
  Vector center;
  double radius = 0.0;
};

// Either an index into a finite family or a drawn parameter vector.
using Sample = std::variant<std::size_t, Vector>;

enum class ReplacementMode { kWith, kWithout };

std::string_view to_string(ReplacementMode mode);

struct SampleBatch {
  std::vector<Sample> samples;
  ReplacementMode mode = ReplacementMode::kWith;

  std::size_t size() const { return samples.size(); }
};

// Immutable after construction; safe to share across threads.
class ConstraintFamily {
 public:
  static ConstraintFamily finite(std::vector<Constraint> constraints,
                                 std::optional<double> lipschitz_bound = {},
                                 std::optional<WorkingBall> working_ball = {});
  static ConstraintFamily parametric(Eigen::Index dimension, ParametricSpec spec,
                                     std::optional<double> lipschitz_bound = {},
                                     std::optional<WorkingBall> working_ball = {});

  bool is_finite() const { return !parametric_.has_value(); }
  Eigen::Index dimension() const { return dimension_; }
  // Number of elements of a finite family; throws kUnsupported otherwise.
  std::size_t size() const;

  const std::vector<Constraint>& constraints() const;
  const ParametricSpec& parametric_spec() const;

  std::optional<double> lipschitz_bound() const { return lipschitz_bound_; }
  const std::optional<WorkingBall>& working_ball() const { return working_ball_; }

  // Finite fast path; the index is range-checked.
  const Constraint& at(std::size_t index) const;

  Constraint instantiate(const Sample& sample) const;

 private:
  ConstraintFamily() = default;

  Eigen::Index dimension_ = 0;
  std::vector<Constraint> constraints_;
  std::optional<ParametricSpec> parametric_;
  std::optional<double> lipschitz_bound_;
  std::optional<WorkingBall> working_ball_;
};

double evaluate(const ConstraintFamily& family, const Sample& sample, const Vector& x);
Vector subgradient(const ConstraintFamily& family, const Sample& sample, const Vector& x);

// With replacement: L i.i.d. draws from P. Without replacement (finite only,
// L <= m): a uniformly random L-subset in random order.
SampleBatch sample_batch(const ConstraintFamily& family, Rng& rng, std::int64_t batch_size,
                         ReplacementMode mode = ReplacementMode::kWith);

}  // namespace polyfeas

#endif  // POLYFEAS_CONSTRAINT_HPP_
