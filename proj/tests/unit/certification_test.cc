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

#include "helpers.hpp"
#include "oracles/oracles.hpp"
#include "polyfeas/certification.hpp"

using namespace polyfeas;
using testing::error_code_of;
using testing::vec;

namespace {

// f_i(x) = x - i for i = 1..10: residuals at x = 0 are -1..-10.
ConstraintFamily ladder() {
  std::vector<Constraint> cs;
  for (int i = 1; i <= 10; ++i) cs.push_back(Constraint::affine(vec({1}), -i));
  return ConstraintFamily::finite(cs);
}

}  // namespace

TEST_SUITE("certification") {

TEST_CASE("exact coverage on the ladder") {
  const auto f = ladder();
  CHECK(coverage_exact(f, {vec({0}), 0.0}) == 1.0);
  CHECK(coverage_exact(f, {vec({0}), -11.0}) == 0.0);
  // f_i(0) = -i <= -3 exactly when i >= 3: 8 of 10.
  CHECK(coverage_exact(f, {vec({0}), -3.0}) == doctest::Approx(0.8));
  CHECK(oracle::coverage(residuals(f, vec({0})), -3.0) == doctest::Approx(0.8));
}

TEST_CASE("coverage counts residuals equal to eps") {
  const auto f = ConstraintFamily::finite(std::vector<Constraint>(4, Constraint::affine(vec({1}), -1)));
  CHECK(coverage_exact(f, {vec({3}), 2.0}) == 1.0);
  CHECK(coverage_exact(f, {vec({3}), std::nextafter(2.0, 0.0)}) == 0.0);
}

TEST_CASE("exact coverage rejects parametric families") {
  ParametricSpec spec;
  spec.center = vec({0, 0});
  spec.scale = vec({1, 1});
  const auto p = ConstraintFamily::parametric(1, spec);
  CHECK(error_code_of([&] { coverage_exact(p, {vec({0}), 0.0}); }) == ErrorCode::kUnsupported);
}

TEST_CASE("residual quantile spot values") {
  // Residuals 1..10 at x = 0.
  std::vector<Constraint> cs;
  for (int i = 1; i <= 10; ++i) cs.push_back(Constraint::affine(vec({1}), i));
  const auto f = ConstraintFamily::finite(cs);
  CHECK(residual_quantile(f, vec({0}), 0.25) == 8.0);
  CHECK(residual_quantile(f, vec({0}), 1e-9) == 10.0);
  CHECK(oracle::quantile(residuals(f, vec({0})), 0.25) == 8.0);
  CHECK(residual_quantile(f, vec({0}), 0.1) == 9.0);
  const auto flat =
      ConstraintFamily::finite(std::vector<Constraint>(5, Constraint::affine(vec({0}), 2.5)));
  for (double g : {0.01, 0.3, 0.9}) CHECK(residual_quantile(flat, vec({7}), g) == 2.5);
}

TEST_CASE("required count tolerates binary fractions") {
  CHECK(required_count(1000, 0.1) == 900);
  CHECK(required_count(10, 0.25) == 8);
  CHECK(required_count(3, 0.999) == 1);
  CHECK(meets_coverage(0.9, 0.1));
  CHECK_FALSE(meets_coverage(0.899, 0.1));
}

TEST_CASE("Wilson interval matches the closed form") {
  for (auto [s, n] : {std::pair{0, 1}, {1, 1}, {5, 10}, {97, 100}, {100, 100}, {12345, 100000}}) {
    const WilsonInterval w = wilson_interval(s, n);
    const auto [lo, hi] = oracle::wilson(s, n, 1.959963984540054L);
    CHECK(w.lower == doctest::Approx(lo).epsilon(1e-12));
    CHECK(w.upper == doctest::Approx(hi).epsilon(1e-12));
    CHECK(w.lower <= static_cast<double>(s) / n);
    CHECK(w.upper >= static_cast<double>(s) / n);
  }
  // n = 1: the interval is [0, z^2/(1+z^2)] or its mirror.
  const double z2 = 1.959963984540054 * 1.959963984540054;
  CHECK(wilson_interval(0, 1).upper == doctest::Approx(z2 / (1 + z2)));
  CHECK(wilson_interval(1, 1).lower == doctest::Approx(1 / (1 + z2)));
}

TEST_CASE("Monte-Carlo coverage") {
  Rng rng(1);
  const auto same = ConstraintFamily::finite({Constraint::affine(vec({1}), -1)});
  const CoverageEstimate all = coverage_mc(same, {vec({0}), 0.0}, 1000, rng);
  CHECK(all.estimate == 1.0);
  CHECK(all.interval.upper == 1.0);
  CHECK(all.interval.lower > 0.9);

  const CoverageEstimate one = coverage_mc(ladder(), {vec({0}), -3.0}, 1, rng);
  CHECK((one.estimate == 0.0 || one.estimate == 1.0));
  CHECK(one.interval.upper - one.interval.lower == doctest::Approx(
      one.estimate == 1.0 ? 1 - wilson_interval(1, 1).lower : wilson_interval(0, 1).upper));

  const CoverageEstimate big = coverage_mc(ladder(), {vec({0}), -3.0}, 100000, rng);
  CHECK(std::abs(big.estimate - 0.8) <= 0.01);
  CHECK(error_code_of([&] { coverage_mc(same, {vec({0}), 0.0}, 0, rng); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("Monte-Carlo coverage is reproducible") {
  Rng a(77), b(77);
  const CoverageEstimate x = coverage_mc(ladder(), {vec({0}), -5.0}, 5000, a);
  const CoverageEstimate y = coverage_mc(ladder(), {vec({0}), -5.0}, 5000, b);
  CHECK(x.hits == y.hits);
}

}  // TEST_SUITE
