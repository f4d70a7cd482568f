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

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles/oracles.hpp"
#include "polyfeas/certification.hpp"
#include "polyfeas/problem_gen.hpp"

using namespace polyfeas;
using testing::error_code_of;
using testing::vec;

namespace {

double max_residual(const ConstraintFamily& f, const Vector& x) {
  double worst = -1e300;
  for (const Constraint& c : f.constraints()) worst = std::max(worst, c.value(x));
  return worst;
}

}  // namespace

TEST_SUITE("problem_gen") {

TEST_CASE("interval problem") {
  const GeneratedProblem p = gen_interval(-1, 1, 5);
  CHECK(p.family.size() == 2);
  CHECK(p.dist_exact.has_value());
  CHECK(*p.dist_exact == 4.0);
  CHECK(max_residual(p.family, p.feasible_witness) <= 0.0);
  CHECK(*p.dist_exact <= p.dist_upper);
  CHECK(p.family.at(0).value(vec({5})) == 4.0);
  CHECK(p.family.at(1).value(vec({5})) == -6.0);
}

TEST_CASE("large linear system: witness verifies on every constraint") {
  Rng rng(1000);
  const GeneratedProblem p = gen_linear(2, 1000, 1.0, rng, {0.5, 10.0});
  CHECK(p.family.size() == 1000);
  CHECK(p.x0.norm() == doctest::Approx(10.0));
  for (const Constraint& c : p.family.constraints()) CHECK(c.value(p.feasible_witness) <= 0.0);
  // Strictly satisfied on the interior ball of radius 0.5.
  for (const Constraint& c : p.family.constraints()) CHECK(c.value(p.feasible_witness) <= -0.5 + 1e-12);
}

TEST_CASE("linear dist_exact matches brute-force enumeration in the plane") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Rng rng(seed);
    const GeneratedProblem p = gen_linear(2, 25, 0.6, rng, {1.0, 6.0});
    std::vector<oracle::Vec> a;
    oracle::Vec b;
    for (const Constraint& c : p.family.constraints()) {
      const auto& aff = std::get<AffineConstraint>(c.body());
      a.push_back(testing::to_std(aff.a));
      b.push_back(aff.b);
    }
    const double brute = oracle::polygon_distance(a, b, testing::to_std(p.x0));
    REQUIRE(p.dist_exact.has_value());
    CHECK(*p.dist_exact == doctest::Approx(brute).epsilon(1e-9));
    CHECK(distance_to(*p.feasible_set, p.x0) == doctest::Approx(brute).epsilon(1e-6));
  }
}

TEST_CASE("linear generator errors and 1-D layout") {
  Rng rng(1);
  CHECK(error_code_of([&] { gen_linear(2, 5, 1.0, rng, {0.0, 10.0}); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([&] { gen_linear(2, 5, 0.0, rng); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([&] { gen_linear(0, 5, 1.0, rng); }) == ErrorCode::kInvalidArgument);
  const GeneratedProblem p = gen_linear(1, 2, 1.0, rng, {1.0, 5.0});
  CHECK(*p.dist_exact == doctest::Approx(4.0));
}

TEST_CASE("declared Lipschitz bound holds on the working ball") {
  Rng rng(12);
  for (const GeneratedProblem& p :
       {gen_linear(3, 40, 0.5, rng), gen_quadratic(3, 40, rng), gen_interval(-2, 1, 4)}) {
    REQUIRE(p.family.lipschitz_bound().has_value());
    REQUIRE(p.family.working_ball().has_value());
    const WorkingBall& ball = *p.family.working_ball();
    const double m = *p.family.lipschitz_bound();
    CHECK((p.x0 - ball.center).norm() <= ball.radius + 1e-12);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> u;
    for (int t = 0; t < 300; ++t) {
      Vector d(p.family.dimension());
      for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = gauss(rng);
      const Vector x = ball.center + d.normalized() * ball.radius * std::sqrt(u(rng));
      for (const Constraint& c : p.family.constraints()) CHECK(c.subgradient(x).norm() <= m + 1e-9);
    }
  }
}

TEST_CASE("single ball: residual growth is at least t^2") {
  const auto f = ConstraintFamily::finite({Constraint::squared_ball(vec({0, 0}), 1)});
  for (double t = 0.01; t < 20; t *= 1.7) {
    const Vector x = vec({(1 + t) * 0.6, (1 + t) * 0.8});
    const double r = evaluate(f, std::size_t{0}, x);
    CHECK(r == doctest::Approx((1 + t) * (1 + t) - 1));
    CHECK(r >= t * t);
  }
}

TEST_CASE("quadratic problems") {
  Rng rng(50);
  const GeneratedProblem p = gen_quadratic(2, 50, rng);
  for (const Constraint& c : p.family.constraints()) CHECK(c.value(p.feasible_witness) <= 0.0);
  REQUIRE(p.growth.has_value());
  CHECK(p.growth->degree == 2.0);
  CHECK(p.growth->mu == 1.0);
  CHECK(p.growth->delta_mass > 0.0);
  REQUIRE(p.dist_exact.has_value());
  CHECK(*p.dist_exact == doctest::Approx(4.0));  // x0_offset 5 - core radius 1
  CHECK(*p.dist_exact <= p.dist_upper + 1e-12);

  // m identical balls share the profile.
  QuadraticShape all_core;
  all_core.core_fraction = 1.0;
  const GeneratedProblem same = gen_quadratic(3, 6, rng, all_core);
  CHECK(same.growth->delta_mass == 1.0);
  Rng est_rng(2);
  const GrowthEstimate e = estimate_growth(same, 200, est_rng);
  CHECK(e.best.degree == 2.0);
  CHECK(e.best.delta_mass == 1.0);
  CHECK(e.best.mu >= 1.0 - 1e-9);
}

TEST_CASE("growth estimate on the interval") {
  const GeneratedProblem p = gen_interval(-1, 1, 5);
  Rng rng(3);
  const GrowthEstimate e = estimate_growth(p, 500, rng);
  // At any exterior x exactly one residual equals the distance.
  CHECK(e.best.degree == 1.0);
  CHECK(e.best.delta_mass == doctest::Approx(0.5));
  CHECK(e.best.mu == doctest::Approx(1.0));
  CHECK(e.points > 0);
}

TEST_CASE("growth estimate on a linear system is consistent at distance 2") {
  Rng rng(77);
  const GeneratedProblem p = gen_linear(2, 60, 0.8, rng, {1.0, 8.0});
  Rng est(5);
  const GrowthEstimate e = estimate_growth(p, 300, est, {1.0});
  REQUIRE(e.per_degree.size() == 1);
  const GrowthProfile g = e.per_degree.front();
  CHECK(g.delta_mass > 0.0);
  CHECK(g.mu > 0.0);
  // Points at distance exactly 2 from the feasible set along random rays.
  std::vector<Vector> pts;
  std::normal_distribution<double> gauss;
  while (pts.size() < 50) {
    Vector d(2);
    d << gauss(rng), gauss(rng);
    d.normalize();
    // Walk out until the distance passes 2, then bisect.
    double lo = 0.0, hi = 1.0;
    while (distance_to(*p.feasible_set, hi * d) < 2.0) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (distance_to(*p.feasible_set, mid * d) < 2.0 ? lo : hi) = mid;
    }
    const Vector x = hi * d;
    if ((x - p.feasible_witness).norm() <= p.dist_upper) pts.push_back(x);
  }
  // The estimate is a sample-based suggestion; at these points the mass with
  // f >= mu * 2 stays positive for the estimated mu.
  CHECK(growth_mass(p, pts, g.mu, 1.0) > 0.0);
}

TEST_CASE("growth estimate errors") {
  const GeneratedProblem p = gen_interval(-1, 1, 5);
  Rng rng(1);
  CHECK(error_code_of([&] { estimate_growth(p, 0, rng); }) == ErrorCode::kInvalidArgument);
  GeneratedProblem inside = p;
  inside.x0 = vec({0.5});
  CHECK(error_code_of([&] { estimate_growth(inside, 10, rng); }) == ErrorCode::kPrecondition);
}

TEST_CASE("parametric linear family") {
  Rng rng(6);
  const GeneratedProblem p = gen_parametric_linear(3, 0.5, 1.5, 10.0, rng);
  CHECK_FALSE(p.family.is_finite());
  Rng draw(7);
  const SampleBatch b = sample_batch(p.family, draw, 500);
  for (const Sample& s : b.samples) {
    CHECK(evaluate(p.family, s, p.feasible_witness) <= -0.5 / std::sqrt(3.0) + 1e-12);
    CHECK(subgradient(p.family, s, p.x0).norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("projections onto the catalog sets") {
  const BallSet ball{vec({1, 1}), 1.0};
  CHECK(distance_to(ball, vec({4, 5})) == doctest::Approx(4.0));
  const BoxSet box{vec({0, 0}), vec({1, 1})};
  CHECK(project_onto(box, vec({2, -1})) == vec({1, 0}));
  Matrix a(2, 2);
  a << 1, 0, 0, 1;
  const PolyhedronSet quadrant{a, vec({0, 0})};  // x <= 0, y <= 0
  CHECK(project_onto(quadrant, vec({3, 4})).norm() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(distance_to(quadrant, vec({3, -4})) == doctest::Approx(3.0));
}

}  // TEST_SUITE
