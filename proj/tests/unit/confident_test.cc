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
#include "polyfeas/confident.hpp"
#include "polyfeas/problem_gen.hpp"

using namespace polyfeas;
using testing::error_code_of;
using testing::vec;

TEST_SUITE("confident") {

TEST_CASE("batch schedule spot values") {
  CHECK(batch_size(0.1, 0.05, 1) == 37);
  CHECK(batch_size(0.1, 0.05, 2) == 51);
  CHECK(oracle::schedule(0.1L, 0.05L, 1) == 37);
  CHECK(oracle::schedule(0.1L, 0.05L, 2) == 51);
  CHECK(minimal_batch_size(0.1, 0.05, 1) == 36);
  CHECK(minimal_batch_size(0.1, 0.05, 2) == 49);
}

TEST_CASE("batch schedule matches the oracle on a grid") {
  for (double gamma : {0.5, 0.25, 0.1, 0.05, 0.01}) {
    for (double alpha : {0.5, 0.2, 0.05, 0.01}) {
      std::int64_t prev = 0;
      for (std::int64_t k = 1; k <= 200; k += (k < 20 ? 1 : 17)) {
        const std::int64_t l = batch_size(gamma, alpha, k);
        CAPTURE(gamma);
        CAPTURE(alpha);
        CAPTURE(k);
        CHECK(l == oracle::schedule(gamma, alpha, k));
        CHECK(l >= 1);
        CHECK(l >= prev);
        prev = l;
        // The sufficient condition the confidence proof needs.
        CHECK(std::pow(1.0L - gamma, l) <= alpha / (2.0L * k * k));
        const std::int64_t exact = minimal_batch_size(gamma, alpha, k);
        CHECK(exact == oracle::minimal_schedule(gamma, alpha, k));
        CHECK(l >= exact);
        // The ceiling of ln(.)/gamma exceeds the exact minimum by at most the
        // gap between the two real thresholds plus one.
        const double c = std::log(2.0 * k * k / alpha);
        CHECK(static_cast<double>(l - exact) <= c / gamma - c / -std::log1p(-gamma) + 1.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("schedule argument checks") {
  CHECK(error_code_of([] { batch_size(0.0, 0.05, 1); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([] { batch_size(0.1, 1.0, 1); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([] { batch_size(0.1, 0.05, 0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("feasible start: the first pair certifies immediately") {
  const auto f = ConstraintFamily::finite(
      {Constraint::affine(vec({1}), -1), Constraint::affine(vec({-1}), -1)});
  ConfidentConfig config;
  config.stop.max_iters = 3;
  const ConfidentResult r = run_confident(f, vec({0}), config);
  REQUIRE(!r.pairs.empty());
  CHECK(r.pairs.front().eps <= 0.0);
  CHECK(r.pairs.front().k == 0);
  CHECK(r.pairs.front().x == vec({0}));
}

TEST_CASE("pairs mirror the trace and the schedule") {
  Rng rng(8);
  const GeneratedProblem p = gen_linear(3, 80, 0.6, rng);
  ConfidentConfig config;
  config.gamma = 0.2;
  config.alpha = 0.1;
  config.stop.max_iters = 40;
  config.seed = 9;
  const ConfidentResult r = run_confident(p.family, p.x0, config);
  REQUIRE(r.pairs.size() == r.trace.records.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i) + 1;
    total += oracle::schedule(0.2L, 0.1L, k);
    CHECK(r.pairs[i].k == k - 1);
    CHECK(r.pairs[i].batch_size_used == oracle::schedule(0.2L, 0.1L, k));
    CHECK(r.pairs[i].cumulative_samples == total);
    CHECK(r.pairs[i].eps == r.trace.records[i].residual);
  }
  CHECK(r.trace.total_samples == total);
  // eps is the batch maximum at x, so it is at most the largest residual.
  for (const CertifiedPair& pair : r.pairs) {
    double worst = -1e300;
    for (const Constraint& c : p.family.constraints()) worst = std::max(worst, c.value(pair.x));
    CHECK(pair.eps <= worst);
  }
}

TEST_CASE("monotone 1-D system: residuals do not increase until feasible") {
  std::vector<Constraint> cs;
  for (int i = 1; i <= 10; ++i) cs.push_back(Constraint::affine(vec({1}), -i));
  const auto f = ConstraintFamily::finite(cs, 1.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ConfidentConfig config;
    config.seed = seed;
    config.stop.residual_target = 0.0;
    const ConfidentResult r = run_confident(f, vec({100}), config);
    for (std::size_t i = 1; i < r.pairs.size(); ++i) {
      CHECK(r.pairs[i].eps <= r.pairs[i - 1].eps);
    }
    CHECK(r.pairs.back().eps <= 0.0);
  }
}

TEST_CASE("residual target stop respects the deterministic bound") {
  Rng rng(21);
  const GeneratedProblem p = gen_linear(4, 200, 0.5, rng);
  const double m = *p.family.lipschitz_bound();
  const double dist = *p.dist_exact;
  for (double rel : {0.5, 0.2, 0.1}) {
    const double eps = rel * m * dist;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      ConfidentConfig config;
      config.gamma = 0.1;
      config.alpha = 0.1;
      config.seed = seed;
      config.stop.residual_target = eps;
      const ConfidentResult r = run_confident(p.family, p.x0, config);
      CHECK(r.trace.stop_reason == StopReason::kResidualTarget);
      CHECK(r.trace.iterations <= 1 + oracle::budget(m, dist, eps));
    }
  }
}

TEST_CASE("exact audit: coverage and error flags") {
  std::vector<Constraint> cs;
  for (int i = 1; i <= 10; ++i) cs.push_back(Constraint::affine(vec({1}), i));  // f_i(0) = i
  const auto f = ConstraintFamily::finite(cs);
  const std::vector<CertifiedPair> top = {{vec({0}), 10.0, 0, 1, 1}, {vec({0}), 42.0, 1, 1, 2}};
  const AuditReport clean = error_audit(top, f, 0.01);
  CHECK(clean.error_count == 0);
  CHECK_FALSE(clean.first_error.has_value());
  for (const PairAudit& a : clean.pairs) CHECK(a.coverage == 1.0);

  // eps between the two largest residuals covers 9 of 10.
  const std::vector<CertifiedPair> mid = {{vec({0}), 9.5, 3, 1, 1}};
  CHECK(error_audit(mid, f, 0.1).pairs[0].coverage == doctest::Approx(0.9));
  CHECK(error_audit(mid, f, 0.1).error_count == 0);
  CHECK(error_audit(mid, f, 0.15).error_count == 0);
  const AuditReport bad = error_audit(mid, f, 0.05);
  CHECK(bad.error_count == 1);
  REQUIRE(bad.first_error.has_value());
  CHECK(*bad.first_error == 0);
  CHECK(bad.pairs[0].k == 3);
}

TEST_CASE("exact audit needs a finite family; the sampled audit does not") {
  ParametricSpec spec;
  spec.kind = TemplateKind::kAffine;
  spec.center = vec({1, -1});
  spec.scale = vec({0, 1});
  const auto p = ConstraintFamily::parametric(1, spec);
  const std::vector<CertifiedPair> pairs = {{vec({0}), 0.0, 0, 1, 1}, {vec({0}), -0.95, 1, 1, 2}};
  CHECK(error_code_of([&] { error_audit(pairs, p, 0.1); }) == ErrorCode::kUnsupported);
  // f = x + b with b ~ U[-2, 0]: at x = 0, P(f <= 0) = 1 and P(f <= -0.95) = 0.475.
  Rng rng(4);
  const AuditReport mc = error_audit_mc(pairs, p, 0.1, 20000, rng);
  CHECK_FALSE(mc.exact);
  CHECK_FALSE(mc.pairs[0].error);
  CHECK(mc.pairs[1].error);
  CHECK(mc.pairs[1].coverage == doctest::Approx(0.475).epsilon(0.05));
  REQUIRE(mc.pairs[1].interval.has_value());
  CHECK(mc.pairs[1].interval->upper < 0.9);
}

}  // TEST_SUITE
