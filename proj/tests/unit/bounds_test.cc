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
#include "polyfeas/bounds.hpp"

using namespace polyfeas;
using testing::error_code_of;

TEST_SUITE("bounds") {

TEST_CASE("success probability") {
  CHECK(success_prob(0.3, 1) == doctest::Approx(0.3));
  CHECK(success_prob(0.1, 10) == doctest::Approx(0.6513215599).epsilon(1e-12));
  CHECK(static_cast<double>(oracle::success_prob(0.1L, 10)) ==
        doctest::Approx(0.6513215599).epsilon(1e-12));
  const double inv = 1.0 / success_prob(0.1, 10);
  CHECK(inv >= 1.0);
  CHECK(inv < 2.0);
  CHECK(inv == doctest::Approx(1.5354).epsilon(1e-4));
  CHECK(error_code_of([] { success_prob(1.0, 3); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([] { success_prob(0.1, 0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("minibatch bracket on a grid") {
  for (double gamma : {0.5, 0.1, 0.01}) {
    const auto top = static_cast<std::int64_t>(std::floor(1.0 / gamma + 1e-12));
    for (std::int64_t l = 1; l <= top; ++l) {
      const double inv = 1.0 / success_prob(gamma, l);
      const double lg = static_cast<double>(l) * gamma;
      CHECK(inv >= 1.0 / lg - 1e-12);
      CHECK(inv < 2.0 / lg);
    }
  }
}

TEST_CASE("expected iterations, basic") {
  BoundInputs in{1.0, 10.0, 1.0, 0.5, 1};
  CHECK(expected_iters_basic(in) == doctest::Approx(200.0));
  CHECK(deterministic_budget(in) == 100);
  // p close to 1: E approaches N.
  BoundInputs big{1.0, 10.0, 1.0, 0.5, 60};
  CHECK(expected_iters_basic(big) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(static_cast<double>(oracle::expected_basic(1, 10, 1, 0.5L)) == doctest::Approx(200.0));
}

TEST_CASE("precondition: x0 already achieves the goal") {
  BoundInputs in{1.0, 1.0, 1.0, 0.1, 1};
  try {
    expected_iters_basic(in);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPrecondition);
    CHECK(std::string(e.what()).find("already achieves the goal") != std::string::npos);
  }
}

TEST_CASE("doubling L within L <= 1/gamma halves E within a factor of two") {
  for (double gamma : {0.2, 0.1, 0.05, 0.01}) {
    for (std::int64_t l = 1; 2 * l <= static_cast<std::int64_t>(1.0 / gamma + 1e-12); l *= 2) {
      const double e1 = expected_iters_basic({1, 10, 0.5, gamma, l});
      const double e2 = expected_iters_basic({1, 10, 0.5, gamma, 2 * l});
      CHECK(e1 / e2 >= 1.0);
      CHECK(e1 / e2 <= 2.0);
    }
  }
}

TEST_CASE("concentration tail") {
  const double e = 200.0;
  const auto k0 = static_cast<std::int64_t>(std::ceil(2 * e));
  CHECK(concentration_tail(e, 0.5, k0) == 0.5);
  CHECK(concentration_tail(e, 0.5, k0 + 1) == doctest::Approx(1.0 / 3.0));
  CHECK(concentration_tail(e, 0.3, k0 + 7) ==
        doctest::Approx(static_cast<double>(oracle::tail(e, 0.3L, k0 + 7))));
  double prev = 1.0;
  for (std::int64_t k = k0; k < k0 + 20; ++k) {
    const double t = concentration_tail(e, 0.3, k);
    CHECK(t < prev);
    prev = t;
  }
  CHECK(error_code_of([&] { concentration_tail(e, 0.5, k0 - 1); }) == ErrorCode::kPrecondition);
  BoundInputs in{1.0, 10.0, 1.0, 0.5, 1};
  CHECK(concentration_tail(in, 400) == 0.5);
}

TEST_CASE("growth bound") {
  // d = 1: eps^0 = 1, the min picks log2(1024) = 10.
  BoundInputs sharp{1.0, 1024.0, 1.0, 0.999999, 2000};
  const double p = success_prob(sharp);
  CHECK(p == doctest::Approx(1.0));
  CHECK(expected_iters_growth(sharp, {1.0, 1.0, 1.0}) == doctest::Approx(44.0 / p));
  CHECK(static_cast<double>(oracle::expected_growth(1, 1024, 1, 1, 1, 1)) == doctest::Approx(44.0));

  // d = 2, p = 0.5 (gamma = 0.5, L = 1): the constant branch 1/(4^(1/2) - 1) = 1 wins.
  BoundInputs quad{1.0, 1000.0, 0.01, 0.5, 1};
  CHECK(growth_min_term(quad, 2.0) == doctest::Approx(1.0));
  CHECK(expected_iters_growth(quad, {1.0, 2.0, 0.9}) == doctest::Approx(808.0));
  CHECK(static_cast<double>(oracle::expected_growth(1, 1000, 0.01L, 0.5L, 1, 2)) ==
        doctest::Approx(808.0));

  // Large d: the constant branch tends to 1/3.
  BoundInputs wide{1.0, 1000.0, 0.01, 0.5, 1};
  CHECK(growth_min_term(wide, 1e9) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));

  CHECK(error_code_of([&] { expected_iters_growth({1, 10, 1, 0.5, 1}, {1, 1, 0.5}); }) ==
        ErrorCode::kPrecondition);
  // E' decreases in mu.
  CHECK(expected_iters_growth(quad, {2.0, 2.0, 0.9}) < expected_iters_growth(quad, {1.0, 2.0, 0.9}));
}

TEST_CASE("confident bounds") {
  const ConfidentBounds b = confident_iter_bounds({1.0, 10.0, 1.0, 0.1, 1}, std::nullopt);
  CHECK(b.basic == 101);
  CHECK_FALSE(b.growth.has_value());
  CHECK(confident_iter_bounds({1.0, 1.0, 0.999, 0.1, 1}, std::nullopt).basic == 2);
  const ConfidentBounds g =
      confident_iter_bounds({1.0, 1024.0, 1.0, 0.1, 1}, GrowthProfile{1.0, 1.0, 1.0});
  REQUIRE(g.growth.has_value());
  CHECK(*g.growth == doctest::Approx(45.0));
  CHECK(static_cast<double>(oracle::confident_growth(1, 1024, 1, 1, 1)) == doctest::Approx(45.0));
}

TEST_CASE("monotonicity of E") {
  const BoundInputs base{1.0, 10.0, 0.5, 0.1, 2};
  auto e = [](BoundInputs in) { return expected_iters_basic(in); };
  BoundInputs more_eps = base;
  more_eps.eps = 0.7;
  BoundInputs more_l = base;
  more_l.batch_size = 3;
  BoundInputs more_gamma = base;
  more_gamma.gamma = 0.2;
  CHECK(e(more_eps) < e(base));
  CHECK(e(more_l) < e(base));
  CHECK(e(more_gamma) < e(base));
}

TEST_CASE("hitting-time simulator") {
  Rng rng(5);
  const HittingTimeStats one = simulate_hitting_time(7, 1.0, 1000, rng);
  CHECK(one.mean == 7.0);
  CHECK(one.variance == 0.0);
  CHECK(one.first_hit_probability(7) == 1.0);

  const HittingTimeStats s = simulate_hitting_time(5, 0.5, 100000, rng);
  CHECK(std::abs(s.mean - 10.0) <= 0.1);
  // Negative binomial variance N (1 - p) / p^2 = 10.
  CHECK(s.variance == doctest::Approx(10.0).epsilon(0.05));
  for (std::int64_t k = 5; k < 20; ++k) {
    const double pk = static_cast<double>(oracle::hit_pmf(5, 0.5L, k));
    CHECK(std::abs(s.first_hit_probability(k) - pk) <= 4 * std::sqrt(pk * (1 - pk) / 1e5) + 1e-4);
  }
  CHECK(error_code_of([&] { simulate_hitting_time(0, 0.5, 10, rng); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([&] { simulate_hitting_time(3, 0.0, 10, rng); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([&] { simulate_hitting_time(3, 0.5, 0, rng); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("simulator result does not depend on the worker count") {
  Rng a(9), b(9);
  const HittingTimeStats x = simulate_hitting_time(20, 0.3, 20000, a, 1);
  const HittingTimeStats y = simulate_hitting_time(20, 0.3, 20000, b, 4);
  CHECK(x.mean == y.mean);
  CHECK(x.histogram == y.histogram);
}

TEST_CASE("simulated mean agrees with the calculator") {
  Rng rng(31);
  BoundInputs in{1.0, 3.0, 0.7, 0.2, 2};  // N = floor(18.37) = 18
  const double p = success_prob(in);
  const std::int64_t n = deterministic_budget(in);
  CHECK(n == oracle::budget(1, 3, 0.7L));
  const HittingTimeStats s = simulate_hitting_time(n, p, 50000, rng);
  const double sd = std::sqrt(n * (1 - p)) / p / std::sqrt(50000.0);
  CHECK(std::abs(s.mean - expected_iters_basic(in)) <= 1.0 / p + 3 * sd);
}

}  // TEST_SUITE
