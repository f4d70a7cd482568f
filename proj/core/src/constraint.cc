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

#include "polyfeas/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "polyfeas/error.hpp"

namespace polyfeas {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dimension(Eigen::Index expected, const Vector& x) {
  if (x.size() != expected) {
    fail(ErrorCode::kDimensionMismatch, "point has dimension " + std::to_string(x.size()) +
                                            ", constraint expects " + std::to_string(expected));
  }
}

double simple_value(const SimpleConstraint& c, const Vector& x) {
  return std::visit(
      Overloaded{
          [&](const AffineConstraint& s) { return s.a.dot(x) + s.b; },
          [&](const BallDistanceConstraint& s) { return (x - s.center).norm() - s.radius; },
          [&](const QuadraticConstraint& s) { return x.dot(s.q * x) + s.a.dot(x) + s.b; },
      },
      c);
}

Vector simple_subgradient(const SimpleConstraint& c, const Vector& x) {
  return std::visit(Overloaded{
                        [&](const AffineConstraint& s) -> Vector { return s.a; },
                        [&](const BallDistanceConstraint& s) -> Vector {
                          Vector d = x - s.center;
                          const double norm = d.norm();
                          if (norm == 0.0) return Vector::Zero(x.size());
                          return d / norm;
                        },
                        [&](const QuadraticConstraint& s) -> Vector {
                          return 2.0 * (s.q * x) + s.a;
                        },
                    },
                    c);
}

Eigen::Index simple_dimension(const SimpleConstraint& c) {
  return std::visit(Overloaded{
                        [](const AffineConstraint& s) { return s.a.size(); },
                        [](const BallDistanceConstraint& s) { return s.center.size(); },
                        [](const QuadraticConstraint& s) { return s.a.size(); },
                    },
                    c);
}

SimpleConstraint simple_shifted(SimpleConstraint c, double shift) {
  std::visit(Overloaded{
                 [&](AffineConstraint& s) { s.b += shift; },
                 [&](BallDistanceConstraint& s) { s.radius -= shift; },
                 [&](QuadraticConstraint& s) { s.b += shift; },
             },
             c);
  return c;
}

}  // namespace

std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kAffine:
      return "affine";
    case ConstraintKind::kBallDistance:
      return "ball_distance";
    case ConstraintKind::kQuadratic:
      return "quadratic";
    case ConstraintKind::kMax:
      return "max";
  }
  return "unknown";
}

std::string_view to_string(TemplateKind kind) {
  return kind == TemplateKind::kAffine ? "affine" : "ball_distance";
}

std::string_view to_string(DistributionKind kind) {
  return kind == DistributionKind::kUniformBox ? "uniform_box" : "gaussian";
}

std::string_view to_string(ReplacementMode mode) {
  return mode == ReplacementMode::kWith ? "with" : "without";
}

Constraint Constraint::affine(Vector a, double b) {
  require(a.size() > 0, ErrorCode::kInvalidArgument, "affine constraint needs dimension >= 1");
  require(a.allFinite() && std::isfinite(b), ErrorCode::kInvalidArgument,
          "affine coefficients must be finite");
  const Eigen::Index n = a.size();
  return Constraint(AffineConstraint{std::move(a), b}, n);
}

Constraint Constraint::ball_distance(Vector center, double radius) {
  require(center.size() > 0, ErrorCode::kInvalidArgument,
          "ball-distance constraint needs dimension >= 1");
  require(center.allFinite() && std::isfinite(radius), ErrorCode::kInvalidArgument,
          "ball-distance coefficients must be finite");
  const Eigen::Index n = center.size();
  return Constraint(BallDistanceConstraint{std::move(center), radius}, n);
}

Constraint Constraint::quadratic(Matrix q, Vector a, double b) {
  const Eigen::Index n = a.size();
  require(n > 0, ErrorCode::kInvalidArgument, "quadratic constraint needs dimension >= 1");
  require(q.rows() == n && q.cols() == n, ErrorCode::kDimensionMismatch,
          "quadratic Q must be n x n with n = len(a)");
  require(q.allFinite() && a.allFinite() && std::isfinite(b), ErrorCode::kInvalidArgument,
          "quadratic coefficients must be finite");
  Matrix sym = 0.5 * (q + q.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
  require(eig.eigenvalues().minCoeff() >= -1e-10 * scale, ErrorCode::kInvalidArgument,
          "quadratic Q is not positive semidefinite");
  return Constraint(QuadraticConstraint{std::move(sym), std::move(a), b}, n);
}

Constraint Constraint::squared_ball(const Vector& center, double radius) {
  const Eigen::Index n = center.size();
  return quadratic(Matrix::Identity(n, n), -2.0 * center, center.squaredNorm() - radius * radius);
}

Constraint Constraint::max_of(std::vector<Constraint> pieces) {
  require(!pieces.empty(), ErrorCode::kInvalidArgument, "max constraint needs >= 1 piece");
  const Eigen::Index n = pieces.front().dimension();
  MaxConstraint body;
  body.pieces.reserve(pieces.size());
  for (Constraint& piece : pieces) {
    require(piece.dimension() == n, ErrorCode::kDimensionMismatch,
            "max constraint pieces must share a dimension");
    std::visit(Overloaded{
                   [&](const MaxConstraint& inner) {
                     body.pieces.insert(body.pieces.end(), inner.pieces.begin(),
                                        inner.pieces.end());
                   },
                   [&](const auto& simple) { body.pieces.emplace_back(simple); },
               },
               piece.body_);
  }
  return Constraint(std::move(body), n);
}

ConstraintKind Constraint::kind() const {
  return static_cast<ConstraintKind>(body_.index());
}

double Constraint::value(const Vector& x) const {
  check_dimension(dimension_, x);
  return std::visit(Overloaded{
                        [&](const MaxConstraint& m) {
                          double best = simple_value(m.pieces.front(), x);
                          for (std::size_t j = 1; j < m.pieces.size(); ++j) {
                            best = std::max(best, simple_value(m.pieces[j], x));
                          }
                          return best;
                        },
                        [&](const auto& simple) { return simple_value(simple, x); },
                    },
                    body_);
}

Vector Constraint::subgradient(const Vector& x) const {
  check_dimension(dimension_, x);
  return std::visit(Overloaded{
                        [&](const MaxConstraint& m) {
                          std::size_t arg = 0;
                          double best = simple_value(m.pieces.front(), x);
                          for (std::size_t j = 1; j < m.pieces.size(); ++j) {
                            const double v = simple_value(m.pieces[j], x);
                            if (v > best) {
                              best = v;
                              arg = j;
                            }
                          }
                          return simple_subgradient(m.pieces[arg], x);
                        },
                        [&](const auto& simple) { return simple_subgradient(simple, x); },
                    },
                    body_);
}

Constraint Constraint::shifted(double shift) const {
  return std::visit(Overloaded{
                        [&](const MaxConstraint& m) {
                          MaxConstraint out;
                          for (const SimpleConstraint& p : m.pieces) {
                            out.pieces.push_back(simple_shifted(p, shift));
                          }
                          return Constraint(std::move(out), dimension_);
                        },
                        [&](const auto& simple) {
                          return Constraint(std::get<std::decay_t<decltype(simple)>>(
                                                simple_shifted(simple, shift)),
                                            dimension_);
                        },
                    },
                    body_);
}

ConstraintFamily ConstraintFamily::finite(std::vector<Constraint> constraints,
                                          std::optional<double> lipschitz_bound,
                                          std::optional<WorkingBall> working_ball) {
  require(!constraints.empty(), ErrorCode::kInvalidArgument,
          "finite family needs at least one constraint");
  const Eigen::Index n = constraints.front().dimension();
  for (const Constraint& c : constraints) {
    require(c.dimension() == n, ErrorCode::kDimensionMismatch,
            "all constraints of a family must share a dimension");
  }
  require(!lipschitz_bound || *lipschitz_bound > 0.0, ErrorCode::kInvalidArgument,
          "lipschitz_bound must be positive");
  require(!working_ball || (working_ball->center.size() == n && working_ball->radius >= 0.0),
          ErrorCode::kInvalidArgument, "working ball must match the dimension");
  ConstraintFamily family;
  family.dimension_ = n;
  family.constraints_ = std::move(constraints);
  family.lipschitz_bound_ = lipschitz_bound;
  family.working_ball_ = std::move(working_ball);
  return family;
}

ConstraintFamily ConstraintFamily::parametric(Eigen::Index dimension, ParametricSpec spec,
                                              std::optional<double> lipschitz_bound,
                                              std::optional<WorkingBall> working_ball) {
  require(dimension > 0, ErrorCode::kInvalidArgument, "dimension must be >= 1");
  require(spec.center.size() == dimension + 1 && spec.scale.size() == dimension + 1,
          ErrorCode::kDimensionMismatch,
          "parametric center/scale must have dimension + 1 entries");
  require(spec.center.allFinite() && spec.scale.allFinite() && spec.scale.minCoeff() >= 0.0,
          ErrorCode::kInvalidArgument, "parametric scale must be finite and nonnegative");
  require(!spec.normalize_normal || spec.kind == TemplateKind::kAffine,
          ErrorCode::kInvalidArgument, "normalize_normal applies to affine templates only");
  require(!lipschitz_bound || *lipschitz_bound > 0.0, ErrorCode::kInvalidArgument,
          "lipschitz_bound must be positive");
  require(!working_ball || (working_ball->center.size() == dimension && working_ball->radius >= 0.0),
          ErrorCode::kInvalidArgument, "working ball must match the dimension");
  ConstraintFamily family;
  family.dimension_ = dimension;
  family.parametric_ = std::move(spec);
  family.lipschitz_bound_ = lipschitz_bound;
  family.working_ball_ = std::move(working_ball);
  return family;
}

std::size_t ConstraintFamily::size() const {
  require(is_finite(), ErrorCode::kUnsupported, "parametric family has no finite size");
  return constraints_.size();
}

const std::vector<Constraint>& ConstraintFamily::constraints() const {
  require(is_finite(), ErrorCode::kUnsupported, "parametric family has no constraint list");
  return constraints_;
}

const ParametricSpec& ConstraintFamily::parametric_spec() const {
  require(!is_finite(), ErrorCode::kUnsupported, "finite family has no parametric spec");
  return *parametric_;
}

const Constraint& ConstraintFamily::at(std::size_t index) const {
  require(is_finite(), ErrorCode::kUnsupported, "index sample on a parametric family");
  if (index >= constraints_.size()) {
    fail(ErrorCode::kOutOfRange, "sample index " + std::to_string(index) +
                                     " outside family of size " +
                                     std::to_string(constraints_.size()));
  }
  return constraints_[index];
}

Constraint ConstraintFamily::instantiate(const Sample& sample) const {
  if (const auto* index = std::get_if<std::size_t>(&sample)) return at(*index);
  require(!is_finite(), ErrorCode::kUnsupported, "parameter sample on a finite family");
  const Vector& theta = std::get<Vector>(sample);
  require(theta.size() == dimension_ + 1, ErrorCode::kDimensionMismatch,
          "parameter sample must have dimension + 1 entries");
  const Vector head = theta.head(dimension_);
  const double tail = theta(dimension_);
  if (parametric_->kind == TemplateKind::kBallDistance) {
    return Constraint::ball_distance(head, tail);
  }
  if (parametric_->normalize_normal) {
    const double norm = head.norm();
    require(norm > 0.0, ErrorCode::kInvalidArgument, "drawn affine normal is zero");
    return Constraint::affine(head / norm, tail / norm);
  }
  return Constraint::affine(head, tail);
}

double evaluate(const ConstraintFamily& family, const Sample& sample, const Vector& x) {
  require(x.size() == family.dimension(), ErrorCode::kDimensionMismatch,
          "point dimension does not match family");
  if (const auto* index = std::get_if<std::size_t>(&sample)) return family.at(*index).value(x);
  return family.instantiate(sample).value(x);
}

Vector subgradient(const ConstraintFamily& family, const Sample& sample, const Vector& x) {
  require(x.size() == family.dimension(), ErrorCode::kDimensionMismatch,
          "point dimension does not match family");
  if (const auto* index = std::get_if<std::size_t>(&sample)) {
    return family.at(*index).subgradient(x);
  }
  return family.instantiate(sample).subgradient(x);
}

SampleBatch sample_batch(const ConstraintFamily& family, Rng& rng, std::int64_t batch_size,
                         ReplacementMode mode) {
  require(batch_size >= 1, ErrorCode::kInvalidArgument, "batch size must be >= 1");
  SampleBatch batch;
  batch.mode = mode;
  batch.samples.reserve(static_cast<std::size_t>(batch_size));

  if (mode == ReplacementMode::kWithout) {
    require(family.is_finite(), ErrorCode::kUnsupported,
            "sampling without replacement needs a finite family");
    const std::size_t m = family.size();
    require(static_cast<std::size_t>(batch_size) <= m, ErrorCode::kInvalidArgument,
            "without-replacement batch larger than the family");
    // Partial Fisher-Yates.
    std::vector<std::size_t> pool(m);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < static_cast<std::size_t>(batch_size); ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, m - 1);
      std::swap(pool[i], pool[pick(rng)]);
      batch.samples.emplace_back(pool[i]);
    }
    return batch;
  }

  if (family.is_finite()) {
    std::uniform_int_distribution<std::size_t> pick(0, family.size() - 1);
    for (std::int64_t i = 0; i < batch_size; ++i) batch.samples.emplace_back(pick(rng));
    return batch;
  }

  const ParametricSpec& spec = family.parametric_spec();
  const Eigen::Index p = spec.center.size();
  for (std::int64_t i = 0; i < batch_size; ++i) {
    Vector theta(p);
    for (Eigen::Index j = 0; j < p; ++j) {
      if (spec.distribution == DistributionKind::kUniformBox) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        theta(j) = spec.center(j) + spec.scale(j) * u(rng);
      } else {
        std::normal_distribution<double> g(0.0, 1.0);
        theta(j) = spec.center(j) + spec.scale(j) * g(rng);
      }
    }
    batch.samples.emplace_back(std::move(theta));
  }
  return batch;
}

}  // namespace polyfeas
