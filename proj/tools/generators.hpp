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

#ifndef POLYFEAS_TOOLS_GENERATORS_HPP_
#define POLYFEAS_TOOLS_GENERATORS_HPP_

#include <cstdint>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "polyfeas/problem_gen.hpp"
#include "spec_reader.hpp"

namespace polyfeas::harness {

struct LinearGenerator {
  int n = 2;
  int m = 100;
  double sharpness = 1.0;
  LinearShape shape;
};

struct QuadraticGenerator {
  int n = 2;
  int m = 50;
  QuadraticShape shape;
};

struct IntervalGenerator {
  double lo = -1.0;
  double hi = 1.0;
  double x0 = 5.0;
};

struct ParametricLinearGenerator {
  int n = 2;
  double b_lo = 0.5;
  double b_hi = 1.5;
  double x0_offset = 10.0;
};

using GeneratorParams =
    std::variant<LinearGenerator, QuadraticGenerator, IntervalGenerator, ParametricLinearGenerator>;

struct GeneratorSpec {
  GeneratorParams params;
  std::uint64_t seed = 0;
};

// "linear", "quadratic", "interval", "parametric_linear".
std::string generator_name(const GeneratorParams& params);

// Reads {"name": ..., "params": {...}, "seed"?} at `path`. `default_seed`
// applies when the object has no seed of its own.
std::optional<GeneratorSpec> read_generator(SpecReader& reader, const nlohmann::json& j,
                                            const std::string& path, std::uint64_t default_seed);

nlohmann::json to_json(const GeneratorSpec& spec);

GeneratedProblem generate(const GeneratorSpec& spec);

}  // namespace polyfeas::harness

#endif  // POLYFEAS_TOOLS_GENERATORS_HPP_
