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

#ifndef POLYFEAS_PROBLEM_IO_HPP_
#define POLYFEAS_PROBLEM_IO_HPP_

// JSON problem files. Layout (docs/problem_format.md has the full schema):
//
//   {
//     "format": "polyfeas.problem/1",
//     "dimension": n,
//     "type": "finite" | "parametric",
//     "constraints": [ descriptor, ... ],                   // finite
//     "template": {...}, "distribution": {...},             // parametric
//     "lipschitz_bound": M, "working_ball": {...},          // optional
//     "metadata": { "x0", "feasible_witness", "dist_upper", "dist_exact",
//                   "growth", "feasible_set", ... }          // optional
//   }

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "polyfeas/bounds.hpp"
#include "polyfeas/constraint.hpp"
#include "polyfeas/problem_gen.hpp"

namespace polyfeas {

inline constexpr const char* kProblemFormat = "polyfeas.problem/1";

struct ProblemMetadata {
  std::optional<Vector> x0;
  std::optional<Vector> feasible_witness;
  std::optional<double> dist_upper;
  std::optional<double> dist_exact;
  std::optional<GrowthProfile> growth;
  std::optional<FeasibleSet> feasible_set;
  // Unrecognized metadata keys, preserved on round trip.
  nlohmann::json extra = nlohmann::json::object();
};

struct ProblemDocument {
  ConstraintFamily family;
  ProblemMetadata metadata;
};

nlohmann::json vector_to_json(const Vector& v);
// Throws kParse naming `path` when `j` is not an array of numbers.
Vector vector_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json constraint_to_json(const Constraint& c);
Constraint constraint_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json problem_to_json(const ProblemDocument& doc);
ProblemDocument problem_from_json(const nlohmann::json& j);

ProblemDocument read_problem_file(const std::filesystem::path& path);
void write_problem_file(const std::filesystem::path& path, const ProblemDocument& doc);

ProblemDocument to_document(const GeneratedProblem& problem);
// Present when the metadata carries x0, the witness and dist_upper.
std::optional<GeneratedProblem> to_generated(const ProblemDocument& doc);

}  // namespace polyfeas

#endif  // POLYFEAS_PROBLEM_IO_HPP_
