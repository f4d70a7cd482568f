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

#include "polyfeas/problem_gen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "polyfeas/error.hpp"

namespace polyfeas {
namespace {

constexpr int kHildrethMaxSweeps = 200000;

Vector random_unit(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = g(rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

Vector project_polyhedron(const PolyhedronSet& set, const Vector& y) {
  const Eigen::Index m = set.a.rows();
  Vector x = y;
  Vector lambda = Vector::Zero(m);
  const Vector norms_sq = set.a.rowwise().squaredNorm();
  const double tol = 1e-13 * (1.0 + y.norm());
  for (int sweep = 0; sweep < kHildrethMaxSweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (norms_sq(i) == 0.0) continue;
      const double r = set.a.row(i).dot(x) + set.b(i);
      const double updated = std::max(0.0, lambda(i) + r / norms_sq(i));
      const double d = updated - lambda(i);
      if (d != 0.0) {
        x.noalias() -= d * set.a.row(i).transpose();
        lambda(i) = updated;
        max_change = std::max(max_change, std::abs(d) * std::sqrt(norms_sq(i)));
      }
    }
    if (max_change <= tol) break;
  }
  return x;
}

std::vector<double> residuals_at(const ConstraintFamily& family, const Vector& x) {
  std::vector<double> r;
  r.reserve(family.size());
  for (const Constraint& c : family.constraints()) r.push_back(c.value(x));
  return r;
}

}  // namespace

Vector project_onto(const FeasibleSet& set, const Vector& x) {
  if (const auto* ball = std::get_if<BallSet>(&set)) {
    const Vector d = x - ball->center;
    const double norm = d.norm();
    if (norm <= ball->radius) return x;
    return ball->center + (ball->radius / norm) * d;
  }
  if (const auto* box = std::get_if<BoxSet>(&set)) {
    return x.cwiseMax(box->lo).cwiseMin(box->hi);
  }
  return project_polyhedron(std::get<PolyhedronSet>(set), x);
}

double distance_to(const FeasibleSet& set, const Vector& x) {
  return (x - project_onto(set, x)).norm();
}

GeneratedProblem gen_linear(int n, int m, double sharpness, Rng& rng, const LinearShape& shape) {
  require(n >= 1 && m >= 1, ErrorCode::kInvalidArgument, "gen_linear needs n >= 1 and m >= 1");
  require(sharpness > 0.0 && sharpness <= 1.0, ErrorCode::kInvalidArgument,
          "sharpness must lie in (0, 1]");
  require(shape.interior_radius > 0.0, ErrorCode::kInvalidArgument,
          "degenerate interior radius: r must be > 0");
  require(shape.x0_offset > shape.interior_radius, ErrorCode::kInvalidArgument,
          "x0_offset must exceed the interior radius so x0 is infeasible");

  const double r = shape.interior_radius;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix a(m, n);
  Vector b(m);
  std::vector<Constraint> constraints;
  constraints.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Vector normal = n == 1 ? Vector::Constant(1, i % 2 == 0 ? 1.0 : -1.0) : random_unit(n, rng);
    const double slack = i == 0 ? 0.0 : r * (1.0 / sharpness - 1.0) * unit(rng);
    a.row(i) = normal.transpose();
    b(i) = -r - slack;
    constraints.push_back(Constraint::affine(std::move(normal), b(i)));
  }

  GeneratedProblem out{
      ConstraintFamily::finite(std::move(constraints), 1.0,
                               WorkingBall{Vector::Zero(n), shape.x0_offset}),
      shape.x0_offset * a.row(0).transpose(), Vector::Zero(n), shape.x0_offset,
      shape.x0_offset - r, std::nullopt, PolyhedronSet{std::move(a), std::move(b)}};
  return out;
}

GeneratedProblem gen_quadratic(int n, int m, Rng& rng, const QuadraticShape& shape) {
  require(n >= 1 && m >= 1, ErrorCode::kInvalidArgument, "gen_quadratic needs n >= 1 and m >= 1");
  require(shape.core_radius > 0.0, ErrorCode::kInvalidArgument, "core radius must be > 0");
  require(shape.core_fraction > 0.0 && shape.core_fraction <= 1.0, ErrorCode::kInvalidArgument,
          "core_fraction must lie in (0, 1]");
  require(shape.center_spread >= 0.0 && shape.radius_slack >= 0.0, ErrorCode::kInvalidArgument,
          "center_spread and radius_slack must be nonnegative");
  require(shape.x0_offset > shape.core_radius, ErrorCode::kInvalidArgument,
          "x0_offset must exceed the core radius so x0 is infeasible");

  const double big_r = shape.core_radius;
  const int core = std::clamp(static_cast<int>(std::lround(shape.core_fraction * m)), 1, m);
  std::vector<int> is_core(static_cast<std::size_t>(m), 0);
  std::fill(is_core.begin(), is_core.begin() + core, 1);
  std::shuffle(is_core.begin(), is_core.end(), rng);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Constraint> constraints;
  constraints.reserve(static_cast<std::size_t>(m));
  double max_center = 0.0;
  for (int i = 0; i < m; ++i) {
    if (is_core[static_cast<std::size_t>(i)] != 0) {
      constraints.push_back(Constraint::squared_ball(Vector::Zero(n), big_r));
      continue;
    }
    const double s = shape.center_spread * unit(rng);
    const Vector c = s * random_unit(n, rng);
    const double radius = big_r + s + shape.radius_slack * unit(rng);
    max_center = std::max(max_center, c.norm());
    constraints.push_back(Constraint::squared_ball(c, radius));
  }

  const double working = shape.x0_offset;
  const double lipschitz = 2.0 * (working + max_center);
  GeneratedProblem out{
      ConstraintFamily::finite(std::move(constraints), lipschitz,
                               WorkingBall{Vector::Zero(n), working}),
      shape.x0_offset * random_unit(n, rng),
      Vector::Zero(n),
      shape.x0_offset,
      shape.x0_offset - big_r,
      GrowthProfile{1.0, 2.0, static_cast<double>(core) / static_cast<double>(m)},
      BallSet{Vector::Zero(n), big_r}};
  return out;
}

GeneratedProblem gen_interval(double lo, double hi, double x0) {
  require(lo <= hi, ErrorCode::kInvalidArgument, "interval needs lo <= hi");
  std::vector<Constraint> constraints;
  constraints.push_back(Constraint::affine(Vector::Constant(1, 1.0), -hi));
  constraints.push_back(Constraint::affine(Vector::Constant(1, -1.0), lo));
  const double mid = 0.5 * (lo + hi);
  const double upper = std::abs(x0 - mid);
  GeneratedProblem out{
      ConstraintFamily::finite(std::move(constraints), 1.0,
                               WorkingBall{Vector::Constant(1, mid), upper}),
      Vector::Constant(1, x0),
      Vector::Constant(1, mid),
      upper,
      std::max({0.0, lo - x0, x0 - hi}),
      GrowthProfile{1.0, 1.0, 0.5},
      BoxSet{Vector::Constant(1, lo), Vector::Constant(1, hi)}};
  return out;
}

GeneratedProblem gen_parametric_linear(int n, double b_lo, double b_hi, double x0_offset,
                                       Rng& rng) {
  require(n >= 1, ErrorCode::kInvalidArgument, "dimension must be >= 1");
  require(b_lo > 0.0 && b_lo <= b_hi, ErrorCode::kInvalidArgument,
          "offsets need 0 < b_lo <= b_hi");
  require(x0_offset > 0.0, ErrorCode::kInvalidArgument, "x0_offset must be positive");
  ParametricSpec spec;
  spec.kind = TemplateKind::kAffine;
  spec.distribution = DistributionKind::kUniformBox;
  spec.center = Vector::Zero(n + 1);
  spec.scale = Vector::Ones(n + 1);
  spec.center(n) = -0.5 * (b_lo + b_hi);
  spec.scale(n) = 0.5 * (b_hi - b_lo);
  spec.normalize_normal = true;
  GeneratedProblem out{
      ConstraintFamily::parametric(n, std::move(spec), 1.0,
                                   WorkingBall{Vector::Zero(n), x0_offset}),
      x0_offset * random_unit(n, rng),
      Vector::Zero(n),
      x0_offset,
      std::nullopt,
      std::nullopt,
      std::nullopt};
  return out;
}

double growth_mass(const GeneratedProblem& problem, const std::vector<Vector>& points, double mu,
                   double degree) {
  require(problem.family.is_finite() && problem.feasible_set.has_value(),
          ErrorCode::kUnsupported, "growth checks need a finite family with a known feasible set");
  const double m = static_cast<double>(problem.family.size());
  double worst = 1.0;
  for (const Vector& x : points) {
    const double dist = distance_to(*problem.feasible_set, x);
    if (dist <= 0.0) continue;
    const double bound = mu * std::pow(dist, degree);
    const std::vector<double> r = residuals_at(problem.family, x);
    const auto count = std::count_if(r.begin(), r.end(), [&](double v) { return v >= bound; });
    worst = std::min(worst, static_cast<double>(count) / m);
  }
  return worst;
}

GrowthEstimate estimate_growth(const GeneratedProblem& problem, std::int64_t grid_size, Rng& rng,
                               const std::vector<double>& degrees) {
  require(grid_size >= 1, ErrorCode::kInvalidArgument, "grid_size must be >= 1");
  require(!degrees.empty(), ErrorCode::kInvalidArgument, "need at least one candidate degree");
  require(problem.family.is_finite() && problem.feasible_set.has_value(),
          ErrorCode::kUnsupported, "growth estimation needs a finite family with a known set");
  const FeasibleSet& set = *problem.feasible_set;
  const auto n = static_cast<int>(problem.family.dimension());
  const double radius = problem.dist_upper;
  const double floor_dist = 1e-9 * std::max(1.0, radius);
  require(distance_to(set, problem.x0) > floor_dist, ErrorCode::kPrecondition,
          "x0 lies inside the feasible set: no exterior points to sample");

  // Exterior sample points with their distances and residuals.
  std::vector<double> dists;
  std::vector<std::vector<double>> res;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::int64_t attempt = 0;
       attempt < 100 * grid_size && static_cast<std::int64_t>(dists.size()) < grid_size;
       ++attempt) {
    const double rho = radius * std::pow(unit(rng), 1.0 / n);
    const Vector x = problem.feasible_witness + rho * random_unit(n, rng);
    const double d = distance_to(set, x);
    if (d <= floor_dist) continue;
    dists.push_back(d);
    res.push_back(residuals_at(problem.family, x));
  }
  require(!dists.empty(), ErrorCode::kPrecondition, "no exterior points found in the working ball");

  const std::size_t m = problem.family.size();
  GrowthEstimate out;
  out.points = static_cast<std::int64_t>(dists.size());
  for (double degree : degrees) {
    require(degree >= 1.0, ErrorCode::kInvalidArgument, "candidate degree must be >= 1");
    // The achievable mass is the least number of strictly positive residuals
    // over the points; mu is then the smallest count-th largest ratio.
    std::size_t count = m;
    for (const auto& r : res) {
      count = std::min<std::size_t>(
          count, static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](double v) {
            return v > 0.0;
          })));
    }
    double mu = 0.0;
    if (count > 0) {
      mu = std::numeric_limits<double>::infinity();
      for (std::size_t p = 0; p < res.size(); ++p) {
        std::vector<double> ratios;
        const double scale = std::pow(dists[p], degree);
        for (double v : res[p]) ratios.push_back(v / scale);
        std::nth_element(ratios.begin(), ratios.begin() + static_cast<std::ptrdiff_t>(count - 1),
                         ratios.end(), std::greater<>());
        mu = std::min(mu, ratios[count - 1]);
      }
    }
    out.per_degree.push_back(
        GrowthProfile{mu, degree, static_cast<double>(count) / static_cast<double>(m)});
  }

  std::size_t pick = 0;
  for (std::size_t i = 1; i < out.per_degree.size(); ++i) {
    const double gap = out.per_degree[i].delta_mass - out.per_degree[pick].delta_mass;
    const bool declared = problem.growth && out.per_degree[i].degree == problem.growth->degree;
    if (gap > 1e-12 || (gap >= -1e-12 && declared)) pick = i;
  }
  out.best = out.per_degree[pick];
  return out;
}

}  // namespace polyfeas
