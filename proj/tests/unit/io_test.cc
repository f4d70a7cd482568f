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

#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "polyfeas/problem_gen.hpp"
#include "polyfeas/problem_io.hpp"
#include "polyfeas/report_io.hpp"

using namespace polyfeas;
using nlohmann::json;
using testing::error_code_of;
using testing::vec;

namespace {

std::string parse_error_message(const json& j) {
  try {
    problem_from_json(j);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("every constraint kind round-trips") {
  Matrix q(2, 2);
  q << 2, 0.5, 0.5, 1;
  const auto family = ConstraintFamily::finite(
      {Constraint::affine(vec({1, -2}), 0.25), Constraint::ball_distance(vec({0.1, 0.3}), 2),
       Constraint::quadratic(q, vec({1, 1}), -3),
       Constraint::max_of({Constraint::affine(vec({1, 0}), -1), Constraint::ball_distance(vec({0, 0}), 1)})},
      3.5, WorkingBall{vec({0, 0}), 7});
  ProblemDocument doc{family, {}};
  doc.metadata.x0 = vec({4, 4});
  doc.metadata.extra["note"] = "kept";
  const json j = problem_to_json(doc);
  const ProblemDocument back = problem_from_json(json::parse(j.dump()));
  CHECK(back.family.size() == 4);
  CHECK(*back.family.lipschitz_bound() == 3.5);
  CHECK(back.family.working_ball()->radius == 7);
  CHECK(back.metadata.extra["note"] == "kept");
  for (const Vector& x : {vec({0.3, -1.7}), vec({5, 2}), vec({0, 0})}) {
    for (std::size_t i = 0; i < 4; ++i) CHECK(back.family.at(i).value(x) == family.at(i).value(x));
  }
  CHECK(problem_to_json(back) == j);
}

TEST_CASE("generated problems round-trip through files") {
  Rng rng(4);
  const GeneratedProblem p = gen_linear(3, 20, 0.5, rng);
  const auto path = std::filesystem::temp_directory_path() / "polyfeas_io_roundtrip.json";
  write_problem_file(path, to_document(p));
  const auto back = to_generated(read_problem_file(path));
  REQUIRE(back.has_value());
  CHECK(back->x0 == p.x0);
  CHECK(back->dist_upper == p.dist_upper);
  CHECK(back->dist_exact == p.dist_exact);
  REQUIRE(back->feasible_set.has_value());
  CHECK(std::get<PolyhedronSet>(*back->feasible_set).a == std::get<PolyhedronSet>(*p.feasible_set).a);
  std::filesystem::remove(path);

  Rng rng2(5);
  const GeneratedProblem q = gen_quadratic(2, 10, rng2);
  const auto qb = to_generated(problem_from_json(problem_to_json(to_document(q))));
  REQUIRE(qb.has_value());
  CHECK(qb->growth->degree == 2.0);
  CHECK(std::get<BallSet>(*qb->feasible_set).radius == 1.0);
}

TEST_CASE("parametric families round-trip") {
  Rng rng(6);
  const GeneratedProblem p = gen_parametric_linear(2, 0.5, 1.5, 10, rng);
  const ProblemDocument back = problem_from_json(problem_to_json(to_document(p)));
  CHECK_FALSE(back.family.is_finite());
  CHECK(back.family.parametric_spec().normalize_normal);
  CHECK(back.family.parametric_spec().scale == p.family.parametric_spec().scale);
}

TEST_CASE("parse errors name the offending path") {
  const json base = {{"dimension", 2},
                     {"type", "finite"},
                     {"constraints", {{{"kind", "affine"}, {"a", {1, 0}}, {"b", 0}}}}};
  problem_from_json(base);

  json bad_kind = base;
  bad_kind["constraints"][0]["kind"] = "cubic";
  CHECK(parse_error_message(bad_kind).find("$.constraints[0].kind") != std::string::npos);

  json bad_dim = base;
  bad_dim["constraints"][0]["a"] = {1, 0, 0};
  CHECK(parse_error_message(bad_dim).find("$.constraints[0]") != std::string::npos);

  json unknown = base;
  unknown["colour"] = "blue";
  CHECK(parse_error_message(unknown).find("$.colour") != std::string::npos);

  json not_psd = base;
  not_psd["constraints"][0] = {{"kind", "quadratic"}, {"q", {{1, 0}, {0, -1}}}, {"a", {0, 0}}, {"b", 0}};
  CHECK(parse_error_message(not_psd).find("$.constraints[0]") != std::string::npos);

  json missing = base;
  missing.erase("dimension");
  CHECK(parse_error_message(missing).find("$.dimension") != std::string::npos);

  json nested = base;
  nested["constraints"][0] = {{"kind", "max"},
                              {"pieces", {{{"kind", "max"}, {"pieces", json::array()}}}}};
  CHECK(parse_error_message(nested).find("$.constraints[0].pieces") != std::string::npos);

  CHECK(error_code_of([] { read_problem_file("/nonexistent/problem.json"); }) == ErrorCode::kIo);
}

TEST_CASE("trace CSV marks the stop reason on the last row only") {
  RunTrace t;
  t.records.resize(2);
  t.records[0] = {1, 4.0, 0, 0, true, 1, 1, std::nullopt};
  t.records[1] = {2, 0.1, 0, 0, false, 1, 2, std::nullopt};
  t.stop_reason = StopReason::kResidualTarget;
  std::ostringstream out;
  write_trace_csv(out, t);
  CHECK(out.str() ==
        "k,residual,moved,batch_size,cumulative_samples,stop_reason\n"
        "1,4,1,1,1,\n"
        "2,0.1,0,1,2,residual_target\n");
}

TEST_CASE("pairs CSV round-trips bit-exactly") {
  const std::vector<CertifiedPair> pairs = {{vec({0.1, 1.0 / 3.0}), -1e-300, 0, 37, 37},
                                            {vec({-2.5e10, 7}), 0.30000000000000004, 1, 51, 88}};
  std::stringstream ss;
  write_pairs_csv(ss, pairs);
  const std::vector<CertifiedPair> back = read_pairs_csv(ss);
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back[i].x == pairs[i].x);
    CHECK(back[i].eps == pairs[i].eps);
    CHECK(back[i].k == pairs[i].k);
    CHECK(back[i].batch_size_used == pairs[i].batch_size_used);
    CHECK(back[i].cumulative_samples == pairs[i].cumulative_samples);
  }
  std::istringstream bad("k,eps\n1,2\n");
  CHECK(error_code_of([&] { read_pairs_csv(bad); }) == ErrorCode::kParse);
  std::istringstream ragged("k,eps,batch_size,cumulative_samples,x0\n1,2,3\n");
  CHECK(error_code_of([&] { read_pairs_csv(ragged); }) == ErrorCode::kParse);
}

TEST_CASE("shortest round-trip doubles") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(4.0) == "4");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("audit JSON") {
  AuditReport r;
  r.gamma = 0.1;
  r.pairs = {{0, 1.0, 1.0, std::nullopt, false}, {1, 0.5, 0.8, WilsonInterval{0.7, 0.85}, true}};
  r.error_count = 1;
  r.first_error = 1;
  const json j = to_json(r);
  CHECK(j["error_count"] == 1);
  CHECK(j["first_error"] == 1);
  CHECK(j["pairs"][1]["interval"][0] == 0.7);
  CHECK_FALSE(j["pairs"][0].contains("interval"));
}

}  // TEST_SUITE
