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

#ifndef POLYFEAS_PROBLEM_GEN_HPP_
#define POLYFEAS_PROBLEM_GEN_HPP_

// Constraint families with ground truth: a known feasible point, the
// distance from x0 to the feasible set (exact where the construction allows
// it), and a declared growth profile where one can be proven.
//
// Every generated family has a feasible ball of positive radius around the
// witness. That is a restriction of the generators only; the solvers do not
// need an interior.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "polyfeas/bounds.hpp"
#include "polyfeas/constraint.hpp"
#include "polyfeas/types.hpp"

namespace polyfeas {

struct BallSet {
  Vector center;
  double radius = 0.0;
};

struct BoxSet {
  Vector lo;
  Vector hi;
};

// {x : A x + b <= 0}.
struct PolyhedronSet {
  Matrix a;
  Vector b;
};

using FeasibleSet = std::variant<BallSet, BoxSet, PolyhedronSet>;

// Euclidean projection onto the set. Polyhedra use Hildreth's dual
// coordinate ascent to a 1e-12 stationarity tolerance.
Vector project_onto(const FeasibleSet& set, const Vector& x);
double distance_to(const FeasibleSet& set, const Vector& x);

struct GeneratedProblem {
  ConstraintFamily family;
  Vector x0;
  Vector feasible_witness;
  double dist_upper = 0.0;  // |x0 - witness|
  std::optional<double> dist_exact;
  std::optional<GrowthProfile> growth;
  std::optional<FeasibleSet> feasible_set;
};

struct LinearShape {
  double interior_radius = 1.0;  // every constraint is satisfied on B(0, r)
  double x0_offset = 10.0;       // |x0 - witness|; dist_exact = x0_offset - r
};

// m unit-normal halfspaces a_i.x + b_i <= 0 around the witness z* = 0.
// Constraint i has offset b_i = -r - slack_i with slack_i = r (1/s - 1) u_i,
// u_i ~ U[0,1], where s in (0, 1] is the sharpness knob: s = 1 makes every
// halfspace tangent to B(0, r), smaller s pushes faces outward so fewer
// constraints bind near the set. Constraint 0 is always tangent and x0 sits
// on its outward normal, so the projection of x0 is r a_0 and
// dist_exact = x0_offset - r. For n = 1 the normals alternate +1, -1.
GeneratedProblem gen_linear(int n, int m, double sharpness, Rng& rng,
                            const LinearShape& shape = {});

struct QuadraticShape {
  double core_radius = 1.0;    // R
  double core_fraction = 0.2;  // share of constraints equal to |x - z*|^2 - R^2
  double center_spread = 0.5;  // non-core centers lie within this distance of z*
  double radius_slack = 0.5;   // non-core radii exceed the containing radius by U[0, slack]
  double x0_offset = 5.0;      // |x0 - z*|
};

// m constraints |x - c_i|^2 - r_i^2 <= 0. At least one (and a core_fraction
// share) is the core ball B(z*, R); every other ball contains it, so the
// feasible set is exactly B(z*, R). Declared growth: mu = 1, degree 2,
// delta_mass = core share, since (R + t)^2 - R^2 >= t^2.
GeneratedProblem gen_quadratic(int n, int m, Rng& rng, const QuadraticShape& shape = {});

// 1-D interval [lo, hi] as {x - hi <= 0, lo - x <= 0}, declared growth
// mu = 1, degree 1, delta_mass = 1/2.
GeneratedProblem gen_interval(double lo, double hi, double x0);

// Infinite family: halfspaces with a ~ U[-1,1]^n normalized to unit length
// and b ~ U[-b_hi, -b_lo], divided by the same norm. The witness 0 is
// feasible for every draw with margin at least b_lo / sqrt(n).
GeneratedProblem gen_parametric_linear(int n, double b_lo, double b_hi, double x0_offset,
                                       Rng& rng);

struct GrowthEstimate {
  // One profile per candidate degree: the largest mass achievable at that
  // degree, with the largest mu that keeps that mass at every sampled point.
  std::vector<GrowthProfile> per_degree;
  GrowthProfile best;
  std::int64_t points = 0;
};

// Brute-force check of mass-form growth at sampled exterior points of the
// working ball (center witness, radius dist_upper). Finite families with a
// known feasible set only. `best` maximizes the mass; ties go to the
// declared degree when the problem has one, else to the smallest degree.
GrowthEstimate estimate_growth(const GeneratedProblem& problem, std::int64_t grid_size, Rng& rng,
                               const std::vector<double>& degrees = {1.0, 2.0});

// Share of constraints with f(x) >= mu * dist(x, X)^degree, minimized over
// the given points.
double growth_mass(const GeneratedProblem& problem, const std::vector<Vector>& points, double mu,
                   double degree);

}  // namespace polyfeas

#endif  // POLYFEAS_PROBLEM_GEN_HPP_
