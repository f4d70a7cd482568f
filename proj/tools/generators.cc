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

#include "generators.hpp"

#include "polyfeas/types.hpp"

namespace polyfeas::harness {
namespace {

using nlohmann::json;

void read_size(SpecReader& r, const json& j, const char* key, const std::string& path, int& out) {
  if (const auto v = r.integer(j, key, path, true)) {
    if (r.check(*v >= 1 && *v <= 100000000, join(path, key), "must be a positive integer")) {
      out = static_cast<int>(*v);
    }
  }
}

void read_real(SpecReader& r, const json& j, const char* key, const std::string& path,
               double& out) {
  if (const auto v = r.number(j, key, path, false)) out = *v;
}

}  // namespace

std::string generator_name(const GeneratorParams& params) {
  switch (params.index()) {
    case 0:
      return "linear";
    case 1:
      return "quadratic";
    case 2:
      return "interval";
    default:
      return "parametric_linear";
  }
}

std::optional<GeneratorSpec> read_generator(SpecReader& r, const json& j, const std::string& path,
                                            std::uint64_t default_seed) {
  if (!r.object(j, path, {"name", "params", "seed"})) return std::nullopt;
  const auto name = r.text(j, "name", path, true);
  GeneratorSpec spec;
  spec.seed = default_seed;
  if (const auto seed = r.integer(j, "seed", path, false)) {
    if (r.check(*seed >= 0, join(path, "seed"), "must be nonnegative")) {
      spec.seed = static_cast<std::uint64_t>(*seed);
    }
  }
  const json empty = json::object();
  const json& params = j.contains("params") ? j["params"] : empty;
  const std::string ppath = join(path, "params");
  if (!name) return std::nullopt;

  const std::size_t before = r.issues().size();
  if (*name == "linear") {
    LinearGenerator g;
    if (r.object(params, ppath, {"n", "m", "sharpness", "interior_radius", "x0_offset"})) {
      read_size(r, params, "n", ppath, g.n);
      read_size(r, params, "m", ppath, g.m);
      read_real(r, params, "sharpness", ppath, g.sharpness);
      read_real(r, params, "interior_radius", ppath, g.shape.interior_radius);
      read_real(r, params, "x0_offset", ppath, g.shape.x0_offset);
      r.check(g.sharpness > 0.0 && g.sharpness <= 1.0, join(ppath, "sharpness"),
              "must lie in (0, 1]");
      r.check(g.shape.interior_radius > 0.0, join(ppath, "interior_radius"), "must be positive");
      r.check(g.shape.x0_offset > g.shape.interior_radius, join(ppath, "x0_offset"),
              "must exceed interior_radius");
    }
    spec.params = g;
  } else if (*name == "quadratic") {
    QuadraticGenerator g;
    if (r.object(params, ppath,
                 {"n", "m", "core_radius", "core_fraction", "center_spread", "radius_slack",
                  "x0_offset"})) {
      read_size(r, params, "n", ppath, g.n);
      read_size(r, params, "m", ppath, g.m);
      read_real(r, params, "core_radius", ppath, g.shape.core_radius);
      read_real(r, params, "core_fraction", ppath, g.shape.core_fraction);
      read_real(r, params, "center_spread", ppath, g.shape.center_spread);
      read_real(r, params, "radius_slack", ppath, g.shape.radius_slack);
      read_real(r, params, "x0_offset", ppath, g.shape.x0_offset);
    }
    spec.params = g;
  } else if (*name == "interval") {
    IntervalGenerator g;
    if (r.object(params, ppath, {"lo", "hi", "x0"})) {
      read_real(r, params, "lo", ppath, g.lo);
      read_real(r, params, "hi", ppath, g.hi);
      read_real(r, params, "x0", ppath, g.x0);
      r.check(g.lo < g.hi, join(ppath, "hi"), "must exceed lo");
    }
    spec.params = g;
  } else if (*name == "parametric_linear") {
    ParametricLinearGenerator g;
    if (r.object(params, ppath, {"n", "b_lo", "b_hi", "x0_offset"})) {
      read_size(r, params, "n", ppath, g.n);
      read_real(r, params, "b_lo", ppath, g.b_lo);
      read_real(r, params, "b_hi", ppath, g.b_hi);
      read_real(r, params, "x0_offset", ppath, g.x0_offset);
      r.check(g.b_lo > 0.0 && g.b_lo <= g.b_hi, join(ppath, "b_lo"), "need 0 < b_lo <= b_hi");
    }
    spec.params = g;
  } else {
    r.error(join(path, "name"),
            "unknown generator '" + *name + "' (linear, quadratic, interval, parametric_linear)");
    return std::nullopt;
  }
  if (r.issues().size() != before) return std::nullopt;
  return spec;
}

json to_json(const GeneratorSpec& spec) {
  json params = std::visit(
      [](const auto& g) -> json {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, LinearGenerator>) {
          return {{"n", g.n},
                  {"m", g.m},
                  {"sharpness", g.sharpness},
                  {"interior_radius", g.shape.interior_radius},
                  {"x0_offset", g.shape.x0_offset}};
        } else if constexpr (std::is_same_v<T, QuadraticGenerator>) {
          return {{"n", g.n},
                  {"m", g.m},
                  {"core_radius", g.shape.core_radius},
                  {"core_fraction", g.shape.core_fraction},
                  {"center_spread", g.shape.center_spread},
                  {"radius_slack", g.shape.radius_slack},
                  {"x0_offset", g.shape.x0_offset}};
        } else if constexpr (std::is_same_v<T, IntervalGenerator>) {
          return {{"lo", g.lo}, {"hi", g.hi}, {"x0", g.x0}};
        } else {
          return {{"n", g.n}, {"b_lo", g.b_lo}, {"b_hi", g.b_hi}, {"x0_offset", g.x0_offset}};
        }
      },
      spec.params);
  return {{"name", generator_name(spec.params)}, {"params", std::move(params)}, {"seed", spec.seed}};
}

GeneratedProblem generate(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  return std::visit(
      [&](const auto& g) -> GeneratedProblem {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, LinearGenerator>) {
          return gen_linear(g.n, g.m, g.sharpness, rng, g.shape);
        } else if constexpr (std::is_same_v<T, QuadraticGenerator>) {
          return gen_quadratic(g.n, g.m, rng, g.shape);
        } else if constexpr (std::is_same_v<T, IntervalGenerator>) {
          return gen_interval(g.lo, g.hi, g.x0);
        } else {
          return gen_parametric_linear(g.n, g.b_lo, g.b_hi, g.x0_offset, rng);
        }
      },
      spec.params);
}

}  // namespace polyfeas::harness
