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

#include "polyfeas/problem_io.hpp"

#include <fstream>
#include <set>
#include <type_traits>
#include <utility>

#include "polyfeas/error.hpp"

namespace polyfeas {
namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::kParse, path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) parse_error(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) parse_error(path + "." + key, "missing required field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) parse_error(path, "expected a number");
  return j.get<double>();
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) parse_error(path, "expected a boolean");
  return j.get<bool>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) parse_error(path, "expected a string");
  return j.get<std::string>();
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (allowed.count(it.key()) == 0) parse_error(path + "." + it.key(), "unknown key");
  }
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) parse_error(path, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Matrix m;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const Vector row = vector_from_json(j[static_cast<std::size_t>(i)], row_path);
    if (i == 0) m.resize(rows, row.size());
    if (row.size() != m.cols()) parse_error(row_path, "ragged matrix row");
    m.row(i) = row.transpose();
  }
  return m;
}

template <class Fn>
auto wrap(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    parse_error(path, e.what());
  }
}

json simple_to_json(const SimpleConstraint& c) {
  if (const auto* s = std::get_if<AffineConstraint>(&c)) {
    return {{"kind", "affine"}, {"a", vector_to_json(s->a)}, {"b", s->b}};
  }
  if (const auto* s = std::get_if<BallDistanceConstraint>(&c)) {
    return {{"kind", "ball_distance"}, {"center", vector_to_json(s->center)}, {"radius", s->radius}};
  }
  const auto& q = std::get<QuadraticConstraint>(c);
  return {{"kind", "quadratic"}, {"q", matrix_to_json(q.q)}, {"a", vector_to_json(q.a)}, {"b", q.b}};
}

json feasible_set_to_json(const FeasibleSet& set) {
  if (const auto* ball = std::get_if<BallSet>(&set)) {
    return {{"kind", "ball"}, {"center", vector_to_json(ball->center)}, {"radius", ball->radius}};
  }
  if (const auto* box = std::get_if<BoxSet>(&set)) {
    return {{"kind", "box"}, {"lo", vector_to_json(box->lo)}, {"hi", vector_to_json(box->hi)}};
  }
  const auto& poly = std::get<PolyhedronSet>(set);
  return {{"kind", "polyhedron"}, {"a", matrix_to_json(poly.a)}, {"b", vector_to_json(poly.b)}};
}

FeasibleSet feasible_set_from_json(const json& j, const std::string& path) {
  const std::string kind = text(field(j, "kind", path), path + ".kind");
  if (kind == "ball") {
    reject_unknown(j, {"kind", "center", "radius"}, path);
    return BallSet{vector_from_json(field(j, "center", path), path + ".center"),
                   number(field(j, "radius", path), path + ".radius")};
  }
  if (kind == "box") {
    reject_unknown(j, {"kind", "lo", "hi"}, path);
    return BoxSet{vector_from_json(field(j, "lo", path), path + ".lo"),
                  vector_from_json(field(j, "hi", path), path + ".hi")};
  }
  if (kind == "polyhedron") {
    reject_unknown(j, {"kind", "a", "b"}, path);
    return PolyhedronSet{matrix_from_json(field(j, "a", path), path + ".a"),
                         vector_from_json(field(j, "b", path), path + ".b")};
  }
  parse_error(path + ".kind", "unknown feasible set kind '" + kind + "'");
}

json growth_to_json(const GrowthProfile& g) {
  return {{"mu", g.mu}, {"degree", g.degree}, {"delta_mass", g.delta_mass}};
}

GrowthProfile growth_from_json(const json& j, const std::string& path) {
  reject_unknown(j, {"mu", "degree", "delta_mass"}, path);
  GrowthProfile g{number(field(j, "mu", path), path + ".mu"),
                  number(field(j, "degree", path), path + ".degree"),
                  number(field(j, "delta_mass", path), path + ".delta_mass")};
  wrap(path, [&] {
    validate(g);
    return 0;
  });
  return g;
}

}  // namespace

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) parse_error(path, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

json constraint_to_json(const Constraint& c) {
  return std::visit(
      [](const auto& body) -> json {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, MaxConstraint>) {
          json pieces = json::array();
          for (const SimpleConstraint& p : body.pieces) pieces.push_back(simple_to_json(p));
          return {{"kind", "max"}, {"pieces", std::move(pieces)}};
        } else {
          return simple_to_json(SimpleConstraint(body));
        }
      },
      c.body());
}

Constraint constraint_from_json(const json& j, const std::string& path) {
  const std::string kind = text(field(j, "kind", path), path + ".kind");
  if (kind == "affine") {
    reject_unknown(j, {"kind", "a", "b"}, path);
    Vector a = vector_from_json(field(j, "a", path), path + ".a");
    const double b = number(field(j, "b", path), path + ".b");
    return wrap(path, [&] { return Constraint::affine(std::move(a), b); });
  }
  if (kind == "ball_distance") {
    reject_unknown(j, {"kind", "center", "radius"}, path);
    Vector c = vector_from_json(field(j, "center", path), path + ".center");
    const double r = number(field(j, "radius", path), path + ".radius");
    return wrap(path, [&] { return Constraint::ball_distance(std::move(c), r); });
  }
  if (kind == "quadratic") {
    reject_unknown(j, {"kind", "q", "a", "b"}, path);
    Matrix q = matrix_from_json(field(j, "q", path), path + ".q");
    Vector a = vector_from_json(field(j, "a", path), path + ".a");
    const double b = number(field(j, "b", path), path + ".b");
    return wrap(path, [&] { return Constraint::quadratic(std::move(q), std::move(a), b); });
  }
  if (kind == "max") {
    reject_unknown(j, {"kind", "pieces"}, path);
    const json& pieces = field(j, "pieces", path);
    if (!pieces.is_array() || pieces.empty()) parse_error(path + ".pieces", "expected a non-empty array");
    std::vector<Constraint> parsed;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const std::string piece_path = path + ".pieces[" + std::to_string(i) + "]";
      Constraint piece = constraint_from_json(pieces[i], piece_path);
      if (piece.kind() == ConstraintKind::kMax) parse_error(piece_path, "max pieces cannot nest");
      parsed.push_back(std::move(piece));
    }
    return wrap(path, [&] { return Constraint::max_of(std::move(parsed)); });
  }
  parse_error(path + ".kind", "unknown constraint kind '" + kind + "'");
}

json problem_to_json(const ProblemDocument& doc) {
  const ConstraintFamily& family = doc.family;
  json out;
  out["format"] = kProblemFormat;
  out["dimension"] = family.dimension();
  if (family.is_finite()) {
    out["type"] = "finite";
    json list = json::array();
    for (const Constraint& c : family.constraints()) list.push_back(constraint_to_json(c));
    out["constraints"] = std::move(list);
  } else {
    const ParametricSpec& spec = family.parametric_spec();
    out["type"] = "parametric";
    out["template"] = {{"kind", std::string(to_string(spec.kind))},
                       {"normalize_normal", spec.normalize_normal}};
    out["distribution"] = {{"kind", std::string(to_string(spec.distribution))},
                           {"center", vector_to_json(spec.center)},
                           {"scale", vector_to_json(spec.scale)}};
  }
  if (family.lipschitz_bound()) out["lipschitz_bound"] = *family.lipschitz_bound();
  if (family.working_ball()) {
    out["working_ball"] = {{"center", vector_to_json(family.working_ball()->center)},
                           {"radius", family.working_ball()->radius}};
  }

  const ProblemMetadata& meta = doc.metadata;
  json m = meta.extra.is_object() ? meta.extra : json::object();
  if (meta.x0) m["x0"] = vector_to_json(*meta.x0);
  if (meta.feasible_witness) m["feasible_witness"] = vector_to_json(*meta.feasible_witness);
  if (meta.dist_upper) m["dist_upper"] = *meta.dist_upper;
  if (meta.dist_exact) m["dist_exact"] = *meta.dist_exact;
  if (meta.growth) m["growth"] = growth_to_json(*meta.growth);
  if (meta.feasible_set) m["feasible_set"] = feasible_set_to_json(*meta.feasible_set);
  if (!m.empty()) out["metadata"] = std::move(m);
  return out;
}

ProblemDocument problem_from_json(const json& j) {
  const std::string root = "$";
  if (!j.is_object()) parse_error(root, "problem file must be a JSON object");
  reject_unknown(j,
                 {"format", "dimension", "type", "constraints", "template", "distribution",
                  "lipschitz_bound", "working_ball", "metadata"},
                 root);
  if (j.contains("format") && text(j["format"], "$.format") != kProblemFormat) {
    parse_error("$.format", "unsupported format tag");
  }
  const json& dim_json = field(j, "dimension", root);
  if (!dim_json.is_number_integer() || dim_json.get<long long>() < 1) {
    parse_error("$.dimension", "expected a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(dim_json.get<long long>());

  std::optional<double> lipschitz;
  if (j.contains("lipschitz_bound")) lipschitz = number(j["lipschitz_bound"], "$.lipschitz_bound");
  std::optional<WorkingBall> ball;
  if (j.contains("working_ball")) {
    const json& wb = j["working_ball"];
    reject_unknown(wb, {"center", "radius"}, "$.working_ball");
    ball = WorkingBall{vector_from_json(field(wb, "center", "$.working_ball"), "$.working_ball.center"),
                       number(field(wb, "radius", "$.working_ball"), "$.working_ball.radius")};
  }

  const std::string type = text(field(j, "type", root), "$.type");
  std::optional<ConstraintFamily> family;
  if (type == "finite") {
    const json& list = field(j, "constraints", root);
    if (!list.is_array() || list.empty()) parse_error("$.constraints", "expected a non-empty array");
    std::vector<Constraint> constraints;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "$.constraints[" + std::to_string(i) + "]";
      Constraint c = constraint_from_json(list[i], path);
      if (c.dimension() != n) parse_error(path, "constraint dimension differs from $.dimension");
      constraints.push_back(std::move(c));
    }
    family = wrap(root, [&] {
      return ConstraintFamily::finite(std::move(constraints), lipschitz, ball);
    });
  } else if (type == "parametric") {
    const json& tmpl = field(j, "template", root);
    reject_unknown(tmpl, {"kind", "normalize_normal"}, "$.template");
    const json& dist = field(j, "distribution", root);
    reject_unknown(dist, {"kind", "center", "scale"}, "$.distribution");
    ParametricSpec spec;
    const std::string tk = text(field(tmpl, "kind", "$.template"), "$.template.kind");
    if (tk == "affine") {
      spec.kind = TemplateKind::kAffine;
    } else if (tk == "ball_distance") {
      spec.kind = TemplateKind::kBallDistance;
    } else {
      parse_error("$.template.kind", "unknown template kind '" + tk + "'");
    }
    if (tmpl.contains("normalize_normal")) {
      spec.normalize_normal = boolean(tmpl["normalize_normal"], "$.template.normalize_normal");
    }
    const std::string dk = text(field(dist, "kind", "$.distribution"), "$.distribution.kind");
    if (dk == "uniform_box") {
      spec.distribution = DistributionKind::kUniformBox;
    } else if (dk == "gaussian") {
      spec.distribution = DistributionKind::kGaussian;
    } else {
      parse_error("$.distribution.kind", "unknown distribution kind '" + dk + "'");
    }
    spec.center = vector_from_json(field(dist, "center", "$.distribution"), "$.distribution.center");
    spec.scale = vector_from_json(field(dist, "scale", "$.distribution"), "$.distribution.scale");
    family = wrap(root, [&] {
      return ConstraintFamily::parametric(n, std::move(spec), lipschitz, ball);
    });
  } else {
    parse_error("$.type", "expected 'finite' or 'parametric'");
  }

  ProblemDocument doc{std::move(*family), {}};
  if (j.contains("metadata")) {
    const json& m = j["metadata"];
    if (!m.is_object()) parse_error("$.metadata", "expected an object");
    ProblemMetadata& meta = doc.metadata;
    for (auto it = m.begin(); it != m.end(); ++it) {
      const std::string path = "$.metadata." + it.key();
      if (it.key() == "x0") {
        meta.x0 = vector_from_json(*it, path);
      } else if (it.key() == "feasible_witness") {
        meta.feasible_witness = vector_from_json(*it, path);
      } else if (it.key() == "dist_upper") {
        meta.dist_upper = number(*it, path);
      } else if (it.key() == "dist_exact") {
        meta.dist_exact = number(*it, path);
      } else if (it.key() == "growth") {
        meta.growth = growth_from_json(*it, path);
      } else if (it.key() == "feasible_set") {
        meta.feasible_set = feasible_set_from_json(*it, path);
      } else {
        meta.extra[it.key()] = *it;
      }
    }
    for (const auto* v : {&meta.x0, &meta.feasible_witness}) {
      if (*v && (*v)->size() != n) parse_error("$.metadata", "point dimension differs from $.dimension");
    }
  }
  return doc;
}

ProblemDocument read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open problem file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  return problem_from_json(j);
}

void write_problem_file(const std::filesystem::path& path, const ProblemDocument& doc) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write problem file " + path.string());
  out << problem_to_json(doc).dump(2) << '\n';
}

ProblemDocument to_document(const GeneratedProblem& problem) {
  ProblemDocument doc{problem.family, {}};
  doc.metadata.x0 = problem.x0;
  doc.metadata.feasible_witness = problem.feasible_witness;
  doc.metadata.dist_upper = problem.dist_upper;
  doc.metadata.dist_exact = problem.dist_exact;
  doc.metadata.growth = problem.growth;
  doc.metadata.feasible_set = problem.feasible_set;
  return doc;
}

std::optional<GeneratedProblem> to_generated(const ProblemDocument& doc) {
  const ProblemMetadata& m = doc.metadata;
  if (!m.x0 || !m.feasible_witness || !m.dist_upper) return std::nullopt;
  return GeneratedProblem{doc.family,   *m.x0,     *m.feasible_witness, *m.dist_upper,
                          m.dist_exact, m.growth,  m.feasible_set};
}

}  // namespace polyfeas
