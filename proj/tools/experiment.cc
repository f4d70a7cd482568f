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

#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "polyfeas/certification.hpp"
#include "polyfeas/confident.hpp"
#include "polyfeas/error.hpp"
#include "polyfeas/report_io.hpp"

namespace polyfeas::harness {
namespace {

using nlohmann::json;

std::optional<ProjectionRegion> read_region(SpecReader& r, const json& j, const std::string& path) {
  if (!r.object(j, path, {"kind", "lo", "hi", "center", "radius"})) return std::nullopt;
  const auto kind = r.text(j, "kind", path, true);
  if (!kind) return std::nullopt;
  auto to_vector = [](const std::vector<double>& v) {
    return Vector(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
  };
  if (*kind == "none") return ProjectionRegion{NoRegion{}};
  if (*kind == "box") {
    const auto lo = r.numbers(j, "lo", path, true);
    const auto hi = r.numbers(j, "hi", path, true);
    if (!lo || !hi) return std::nullopt;
    if (!r.check(lo->size() == hi->size(), join(path, "hi"), "lo and hi differ in length")) {
      return std::nullopt;
    }
    return ProjectionRegion{BoxRegion{to_vector(*lo), to_vector(*hi)}};
  }
  if (*kind == "ball") {
    const auto c = r.numbers(j, "center", path, true);
    const auto rad = r.number(j, "radius", path, true);
    if (!c || !rad) return std::nullopt;
    if (!r.check(*rad >= 0.0, join(path, "radius"), "must be nonnegative")) return std::nullopt;
    return ProjectionRegion{BallRegion{to_vector(*c), *rad}};
  }
  r.error(join(path, "kind"), "expected none, box or ball");
  return std::nullopt;
}

void read_common_config(SpecReader& r, const json& cfg, const std::string& path, SolverSpec& s) {
  if (const auto delta = r.number(cfg, "delta", path, false)) {
    if (r.check(*delta > 0.0 && *delta < 2.0, join(path, "delta"), "must lie in (0, 2)")) {
      s.step.delta = *delta;
    }
  }
  if (cfg.contains("region")) {
    if (auto region = read_region(r, cfg["region"], join(path, "region"))) s.region = *region;
  }
  if (const auto it = r.integer(cfg, "max_iters", path, false)) {
    if (r.check(*it >= 1, join(path, "max_iters"), "must be >= 1")) s.max_iters = *it;
  }
  if (const auto t = r.number(cfg, "residual_target", path, false)) s.residual_target = *t;
}

void read_solver(SpecReader& r, const json& j, const std::string& path, SolverSpec& s) {
  if (!r.object(j, path, {"kind", "config"})) return;
  const auto kind = r.text(j, "kind", path, true);
  const json empty = json::object();
  const json& cfg = j.contains("config") ? j["config"] : empty;
  const std::string cpath = join(path, "config");
  if (!kind) return;
  if (*kind == "pfm") {
    s.kind = SolverKind::kPfm;
    if (!r.object(cfg, cpath,
                  {"batch_size", "replacement", "delta", "region", "max_iters", "residual_target"})) {
      return;
    }
    if (cfg.contains("batch_size")) {
      const json& b = cfg["batch_size"];
      const std::string bpath = join(cpath, "batch_size");
      s.batch_sizes.clear();
      if (b.is_number_integer()) {
        s.batch_sizes.push_back(b.get<std::int64_t>());
      } else if (b.is_array() && !b.empty()) {
        for (std::size_t i = 0; i < b.size(); ++i) {
          if (!b[i].is_number_integer()) {
            r.error(bpath + "[" + std::to_string(i) + "]", "expected an integer");
            continue;
          }
          s.batch_sizes.push_back(b[i].get<std::int64_t>());
        }
      } else {
        r.error(bpath, "expected a positive integer or a non-empty list of them");
      }
      for (std::int64_t l : s.batch_sizes) r.check(l >= 1, bpath, "batch sizes must be >= 1");
    }
    if (const auto mode = r.text(cfg, "replacement", cpath, false)) {
      if (*mode == "with") {
        s.replacement = ReplacementMode::kWith;
      } else if (*mode == "without") {
        s.replacement = ReplacementMode::kWithout;
      } else {
        r.error(join(cpath, "replacement"), "expected 'with' or 'without'");
      }
    }
    read_common_config(r, cfg, cpath, s);
  } else if (*kind == "confident") {
    s.kind = SolverKind::kConfident;
    s.batch_sizes = {0};
    if (!r.object(cfg, cpath,
                  {"gamma", "alpha", "delta", "region", "max_iters", "residual_target"})) {
      return;
    }
    if (const auto g = r.number(cfg, "gamma", cpath, true)) {
      if (r.check(*g > 0.0 && *g < 1.0, join(cpath, "gamma"), "must lie in (0, 1)")) s.gamma = *g;
    }
    if (const auto a = r.number(cfg, "alpha", cpath, true)) {
      if (r.check(*a > 0.0 && *a < 1.0, join(cpath, "alpha"), "must lie in (0, 1)")) s.alpha = *a;
    }
    read_common_config(r, cfg, cpath, s);
  } else {
    r.error(join(path, "kind"), "expected 'pfm' or 'confident'");
  }
}

void read_targets(SpecReader& r, const json& j, const std::string& path,
                  std::vector<TargetSpec>& out) {
  if (!j.is_array()) {
    r.error(path, "expected an array of targets");
    return;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tpath = path + "[" + std::to_string(i) + "]";
    if (!r.object(j[i], tpath, {"eps", "eps_relative", "gamma", "check_every"})) continue;
    TargetSpec t;
    t.eps = r.number(j[i], "eps", tpath, false);
    t.eps_relative = r.number(j[i], "eps_relative", tpath, false);
    t.gamma = r.number(j[i], "gamma", tpath, false);
    if (const auto c = r.integer(j[i], "check_every", tpath, false)) {
      if (r.check(*c >= 1, join(tpath, "check_every"), "must be >= 1")) t.check_every = *c;
    }
    r.check(t.eps.has_value() != t.eps_relative.has_value(), tpath,
            "give exactly one of eps and eps_relative");
    if (t.eps_relative) {
      r.check(*t.eps_relative > 0.0 && *t.eps_relative < 1.0, join(tpath, "eps_relative"),
              "must lie in (0, 1)");
    }
    if (t.gamma) {
      r.check(*t.gamma > 0.0 && *t.gamma < 1.0, join(tpath, "gamma"), "must lie in (0, 1)");
    }
    out.push_back(t);
  }
}

json region_json(const ProjectionRegion& region) { return polyfeas::to_json(region); }

std::string to_string(SolverKind kind) { return kind == SolverKind::kPfm ? "pfm" : "confident"; }

ProblemInfo describe(const GeneratedProblem& p) {
  ProblemInfo info;
  info.dimension = p.family.dimension();
  info.finite = p.family.is_finite();
  info.size = p.family.is_finite() ? p.family.size() : 0;
  info.lipschitz = p.family.lipschitz_bound();
  info.dist_upper = p.dist_upper;
  info.dist_exact = p.dist_exact;
  info.growth = p.growth;
  return info;
}

GeneratedProblem load_problem(const ProblemSource& source) {
  if (const auto* gen = std::get_if<GeneratorSpec>(&source)) return generate(*gen);
  const auto& file = std::get<FileSource>(source);
  if (!std::filesystem::exists(file.path)) {
    fail(ErrorCode::kIo, "problem file " + file.path.string() + " does not exist");
  }
  auto generated = to_generated(read_problem_file(file.path));
  if (!generated) {
    fail(ErrorCode::kPrecondition, "problem file " + file.path.string() +
                                       " needs metadata.x0, metadata.feasible_witness and "
                                       "metadata.dist_upper to drive an experiment");
  }
  return std::move(*generated);
}

std::optional<double> dist0_of(const ProblemInfo& info) {
  return info.dist_exact ? info.dist_exact : info.dist_upper;
}

std::vector<Arm> build_arms(const ExperimentSpec& spec, const ProblemInfo& info) {
  std::vector<Arm> arms;
  const bool pfm = spec.solver.kind == SolverKind::kPfm;
  auto resolve = [&](const TargetSpec& t) -> double {
    if (t.eps) return *t.eps;
    const auto dist0 = dist0_of(info);
    require(info.lipschitz.has_value() && dist0.has_value(), ErrorCode::kPrecondition,
            "eps_relative needs a Lipschitz bound and a distance in the problem metadata");
    return *t.eps_relative * *info.lipschitz * *dist0;
  };
  for (std::int64_t l : spec.solver.batch_sizes) {
    if (spec.targets.empty()) {
      Arm arm;
      arm.batch_size = l;
      arm.eps = spec.solver.residual_target;
      if (!pfm) arm.gamma = spec.solver.gamma;
      arms.push_back(arm);
      continue;
    }
    for (const TargetSpec& t : spec.targets) {
      Arm arm;
      arm.batch_size = l;
      arm.eps = resolve(t);
      if (pfm) {
        arm.gamma = t.gamma;
        arm.coverage_stop = t.gamma.has_value();
        arm.check_every = t.check_every;
        if (arm.coverage_stop) {
          require(info.finite, ErrorCode::kUnsupported,
                  "coverage targets need a finite family (exact coverage)");
        }
      } else {
        arm.gamma = t.gamma ? *t.gamma : spec.solver.gamma;
      }
      arms.push_back(arm);
    }
  }
  for (std::size_t i = 0; i < arms.size(); ++i) arms[i].index = static_cast<std::int64_t>(i);
  return arms;
}

ArmBounds compute_bounds(const ExperimentSpec& spec, const ProblemInfo& info, const Arm& arm) {
  ArmBounds b;
  const auto dist0 = dist0_of(info);
  if (!info.lipschitz || !dist0) {
    b.notes.push_back("no Lipschitz bound or distance in the problem metadata");
    return b;
  }
  if (!arm.eps) {
    b.notes.push_back("no eps target");
    return b;
  }
  BoundInputs in;
  in.lipschitz = *info.lipschitz;
  in.dist0 = *dist0;
  in.eps = *arm.eps;
  in.gamma = arm.gamma.value_or(spec.solver.gamma);
  in.batch_size = arm.batch_size > 0 ? arm.batch_size : 1;
  try {
    validate(in);
  } catch (const Error& e) {
    b.notes.push_back(e.what());
    return b;
  }
  b.inputs = in;
  b.deterministic_budget = deterministic_budget(in);
  if (spec.solver.kind == SolverKind::kPfm && arm.gamma) {
    b.p = success_prob(in);
    b.expected_basic = expected_iters_basic(in);
    if (info.growth) {
      if (in.gamma < info.growth->delta_mass) {
        b.expected_growth = expected_iters_growth(in, *info.growth);
      } else {
        b.notes.push_back("growth bound needs gamma < delta_mass");
      }
    }
  }
  if (spec.solver.kind == SolverKind::kConfident) {
    std::optional<GrowthProfile> growth;
    if (info.growth && in.gamma < info.growth->delta_mass) growth = info.growth;
    const ConfidentBounds cb = confident_iter_bounds(in, growth);
    b.confident_basic = cb.basic;
    b.confident_growth = cb.growth;
  }
  return b;
}

struct TaskOutput {
  RunRow row;
  std::string trace_csv;
  std::string pairs_csv;
};

TaskOutput run_task(const ExperimentSpec& spec, const GeneratedProblem& problem, const Arm& arm,
                    std::int64_t rep) {
  TaskOutput out;
  RunRow& row = out.row;
  row.arm = arm.index;
  row.replication = rep;
  row.seed = spec.seed + static_cast<std::uint64_t>(rep);
  row.batch_size = arm.batch_size;

  StopRule stop;
  stop.max_iters = spec.solver.max_iters;
  stop.residual_target = spec.solver.residual_target;
  if (arm.coverage_stop) {
    stop.coverage_target = CoverageTarget{*arm.eps, *arm.gamma, arm.check_every};
  } else if (arm.eps) {
    stop.residual_target = arm.eps;
  }

  RunTrace trace;
  std::vector<CertifiedPair> pairs;
  if (spec.solver.kind == SolverKind::kPfm) {
    RunConfig config;
    config.batch_size = arm.batch_size;
    config.replacement = spec.solver.replacement;
    config.step = spec.solver.step;
    config.region = spec.solver.region;
    config.stop = stop;
    config.seed = row.seed;
    trace = run_pfm(problem.family, problem.x0, config);
  } else {
    ConfidentConfig config;
    config.gamma = spec.solver.gamma;
    config.alpha = spec.solver.alpha;
    config.step = spec.solver.step;
    config.region = spec.solver.region;
    config.stop = stop;
    config.seed = row.seed;
    ConfidentResult result = run_confident(problem.family, problem.x0, config);
    trace = std::move(result.trace);
    pairs = std::move(result.pairs);
    if (problem.family.is_finite()) {
      const AuditReport audit = error_audit(pairs, problem.family, *arm.gamma);
      row.audit_errors = audit.error_count;
      if (audit.first_error) {
        row.first_error_k = audit.pairs[static_cast<std::size_t>(*audit.first_error)].k;
      }
    }
  }
  row.iterations = trace.iterations;
  row.stop_reason = trace.stop_reason;
  row.final_residual = trace.final_state.last_residual;
  row.total_samples = trace.total_samples;
  if (arm.eps && problem.family.is_finite()) {
    row.final_coverage = coverage_exact(problem.family, {trace.final_state.x, *arm.eps, arm.gamma});
  }
  if (spec.output.traces) {
    std::ostringstream t;
    write_trace_csv(t, trace);
    out.trace_csv = t.str();
    if (!pairs.empty()) {
      std::ostringstream p;
      write_pairs_csv(p, pairs);
      out.pairs_csv = p.str();
    }
  }
  return out;
}

std::string fmt(double v) { return format_double(v); }

void add_validations(ExperimentReport& report) {
  const ExperimentSpec& spec = report.spec;
  const bool pfm = spec.solver.kind == SolverKind::kPfm;
  for (const ArmReport& ar : report.arms) {
    const Arm& arm = ar.arm;
    std::vector<const RunRow*> rows;
    for (const RunRow& row : report.rows) {
      if (row.arm == arm.index) rows.push_back(&row);
    }
    const ArmBounds& b = ar.bounds;
    if (arm.coverage_stop && b.expected_basic) {
      Validation v{"expected_iters_basic", arm.index, ar.iterations.mean <= *b.expected_basic,
                   "mean " + fmt(ar.iterations.mean) + " <= E " + fmt(*b.expected_basic)};
      report.validations.push_back(v);
    }
    if (arm.coverage_stop && b.expected_growth) {
      Validation v{"expected_iters_growth", arm.index, ar.iterations.mean <= *b.expected_growth,
                   "mean " + fmt(ar.iterations.mean) + " <= E' " + fmt(*b.expected_growth)};
      report.validations.push_back(v);
    }
    if (arm.coverage_stop) {
      std::int64_t missed = 0;
      for (const RunRow* row : rows) missed += row->stop_reason != StopReason::kCoverageTarget;
      report.validations.push_back({"coverage_reached", arm.index, missed == 0,
                                    std::to_string(missed) + " runs hit max_iters first"});
    }
    if (!arm.coverage_stop && arm.eps && b.deterministic_budget) {
      const std::int64_t limit = 1 + *b.deterministic_budget;
      std::int64_t checked = 0;
      std::int64_t violations = 0;
      for (const RunRow* row : rows) {
        if (!pfm && row->audit_errors && *row->audit_errors > 0) continue;
        ++checked;
        const bool ok =
            row->stop_reason == StopReason::kResidualTarget && row->iterations <= limit;
        violations += !ok;
      }
      report.validations.push_back(
          {"deterministic_budget", arm.index, violations == 0,
           std::to_string(violations) + " of " + std::to_string(checked) +
               " runs exceed 1 + N = " + std::to_string(limit)});
    }
    if (!pfm && !rows.empty() && rows.front()->audit_errors) {
      std::int64_t failed_runs = 0;
      for (const RunRow* row : rows) failed_runs += *row->audit_errors > 0;
      const double r = static_cast<double>(rows.size());
      const double a = spec.solver.alpha;
      const double limit = a * r + 3.0 * std::sqrt(r * a * (1.0 - a));
      report.validations.push_back({"confidence", arm.index,
                                    static_cast<double>(failed_runs) <= limit,
                                    std::to_string(failed_runs) + " runs with errors, limit " +
                                        fmt(limit)});
    }
  }
  if (pfm) {
    // Minibatch scaling: compare each L <= 1/gamma arm against the L = 1 arm
    // for the same target.
    for (const ArmReport& base : report.arms) {
      if (base.arm.batch_size != 1 || !base.arm.coverage_stop) continue;
      for (const ArmReport& other : report.arms) {
        const Arm& a = other.arm;
        if (a.batch_size <= 1 || !a.coverage_stop || a.eps != base.arm.eps ||
            a.gamma != base.arm.gamma) {
          continue;
        }
        const auto l = static_cast<double>(a.batch_size);
        if (l * *a.gamma > 1.0 + 1e-12) continue;
        const double ratio = base.iterations.mean / other.iterations.mean;
        report.validations.push_back(
            {"minibatch_scaling", a.index, ratio >= l / 2.0 && ratio <= 2.0 * l,
             "ratio " + fmt(ratio) + " in [" + fmt(l / 2.0) + ", " + fmt(2.0 * l) + "]"});
      }
    }
  }
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

SpecResult validate_spec(const std::string& raw, const std::filesystem::path& base_dir) {
  SpecResult result;
  json j;
  try {
    j = json::parse(raw);
  } catch (const json::parse_error& e) {
    result.errors.push_back({"(root)", std::string("not valid JSON: ") + e.what()});
    return result;
  }
  SpecReader r;
  ExperimentSpec spec;
  if (!r.object(j, "", {"problem", "solver", "replications", "seed", "targets", "output"})) {
    result.errors = r.issues();
    return result;
  }
  if (const auto seed = r.integer(j, "seed", "", false)) {
    if (r.check(*seed >= 0, "seed", "must be nonnegative")) spec.seed = static_cast<std::uint64_t>(*seed);
  }
  if (!j.contains("problem")) {
    r.error("problem", "missing required field");
  } else if (r.object(j["problem"], "problem", {"file", "generator"})) {
    const json& p = j["problem"];
    const bool has_file = p.contains("file");
    const bool has_gen = p.contains("generator");
    if (has_file == has_gen) {
      r.error("problem", "give exactly one of file and generator");
    } else if (has_file) {
      if (const auto f = r.text(p, "file", "problem", true)) {
        std::filesystem::path path(*f);
        if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
        spec.problem = FileSource{path};
      }
    } else if (auto gen = read_generator(r, p["generator"], "problem.generator", spec.seed)) {
      spec.problem = *gen;
    }
  }
  if (!j.contains("solver")) {
    r.error("solver", "missing required field");
  } else {
    read_solver(r, j["solver"], "solver", spec.solver);
  }
  if (!j.contains("replications")) {
    r.error("replications", "missing required field");
  } else if (j["replications"].is_array()) {
    r.error("replications", j["replications"].empty() ? "replication list is empty"
                                                      : "expected a replication count");
  } else if (const auto reps = r.integer(j, "replications", "", true)) {
    if (r.check(*reps >= 1, "replications", "must be >= 1")) spec.replications = *reps;
  }
  if (j.contains("targets")) read_targets(r, j["targets"], "targets", spec.targets);
  if (spec.solver.kind == SolverKind::kPfm) {
    for (std::size_t i = 0; i < spec.targets.size(); ++i) {
      if (!spec.targets[i].gamma && spec.targets[i].check_every != 1) {
        r.error("targets[" + std::to_string(i) + "].check_every", "only used with a gamma");
      }
    }
  }
  if (j.contains("output") && r.object(j["output"], "output", {"dir", "prefix", "traces"})) {
    const json& o = j["output"];
    if (const auto d = r.text(o, "dir", "output", false)) {
      std::filesystem::path dir(*d);
      if (dir.is_relative() && !base_dir.empty()) dir = base_dir / dir;
      spec.output.dir = dir;
    }
    if (const auto p = r.text(o, "prefix", "output", false)) {
      if (r.check(!p->empty() && p->find('/') == std::string::npos, "output.prefix",
                  "must be a plain non-empty file name prefix")) {
        spec.output.prefix = *p;
      }
    }
    if (const auto t = r.boolean(o, "traces", "output", false)) spec.output.traces = *t;
  }
  if (r.ok()) {
    result.spec = std::move(spec);
  } else {
    result.errors = r.issues();
  }
  return result;
}

json to_json(const ExperimentSpec& spec) {
  json problem;
  if (const auto* f = std::get_if<FileSource>(&spec.problem)) {
    problem = {{"file", f->path.string()}};
  } else {
    problem = {{"generator", to_json(std::get<GeneratorSpec>(spec.problem))}};
  }
  const SolverSpec& s = spec.solver;
  json config = {{"delta", s.step.delta},
                 {"region", region_json(s.region)},
                 {"max_iters", s.max_iters},
                 {"residual_target", opt(s.residual_target)}};
  if (s.kind == SolverKind::kPfm) {
    config["batch_size"] = s.batch_sizes.size() == 1 ? json(s.batch_sizes.front()) : json(s.batch_sizes);
    config["replacement"] = std::string(polyfeas::to_string(s.replacement));
  } else {
    config["gamma"] = s.gamma;
    config["alpha"] = s.alpha;
  }
  json targets = json::array();
  for (const TargetSpec& t : spec.targets) {
    json tj = json::object();
    if (t.eps) tj["eps"] = *t.eps;
    if (t.eps_relative) tj["eps_relative"] = *t.eps_relative;
    if (t.gamma) tj["gamma"] = *t.gamma;
    tj["check_every"] = t.check_every;
    targets.push_back(std::move(tj));
  }
  return {{"problem", std::move(problem)},
          {"solver", {{"kind", to_string(s.kind)}, {"config", std::move(config)}}},
          {"replications", spec.replications},
          {"seed", spec.seed},
          {"targets", std::move(targets)},
          {"output",
           {{"dir", spec.output.dir.string()},
            {"prefix", spec.output.prefix},
            {"traces", spec.output.traces}}}};
}

bool ExperimentReport::all_passed() const {
  return std::all_of(validations.begin(), validations.end(),
                     [](const Validation& v) { return v.passed; });
}

ExperimentReport run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  require(spec.replications >= 1, ErrorCode::kInvalidArgument, "replications must be >= 1");
  const GeneratedProblem problem = load_problem(spec.problem);
  ExperimentReport report;
  report.spec = spec;
  report.problem = describe(problem);
  std::vector<Arm> arms = build_arms(spec, report.problem);

  // Surface configuration mismatches (e.g. without-replacement L > m) before
  // spawning workers.
  for (Arm& arm : arms) {
    if (spec.solver.kind == SolverKind::kPfm) {
      RunConfig probe;
      probe.batch_size = arm.batch_size;
      probe.replacement = spec.solver.replacement;
      probe.step = spec.solver.step;
      probe.region = spec.solver.region;
      probe.stop.max_iters = spec.solver.max_iters;
      validate(probe, problem.family);
    } else {
      ConfidentConfig probe;
      probe.gamma = spec.solver.gamma;
      probe.alpha = spec.solver.alpha;
      probe.step = spec.solver.step;
      probe.region = spec.solver.region;
      probe.stop.max_iters = spec.solver.max_iters;
      validate(probe, problem.family);
    }
  }

  const std::size_t reps = static_cast<std::size_t>(spec.replications);
  const std::size_t tasks = arms.size() * reps;
  std::vector<TaskOutput> outputs(tasks);
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) {
      try {
        Arm arm = arms[t / reps];
        outputs[t] = run_task(spec, problem, arm, static_cast<std::int64_t>(t % reps));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(tasks)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (TaskOutput& o : outputs) report.rows.push_back(o.row);
  for (const Arm& arm : arms) {
    ArmReport ar;
    ar.arm = arm;
    std::vector<double> iters;
    for (const RunRow& row : report.rows) {
      if (row.arm != arm.index) continue;
      iters.push_back(static_cast<double>(row.iterations));
      ++ar.stop_reasons[std::string(polyfeas::to_string(row.stop_reason))];
    }
    ar.iterations = summarize(iters);
    ar.bounds = compute_bounds(spec, report.problem, arm);
    report.arms.push_back(std::move(ar));
  }
  add_validations(report);

  if (options.write_files) {
    std::filesystem::create_directories(spec.output.dir);
    const std::filesystem::path base = spec.output.dir / spec.output.prefix;
    {
      std::ofstream csv(base.string() + "_runs.csv");
      require(static_cast<bool>(csv), ErrorCode::kIo, "cannot write " + base.string() + "_runs.csv");
      write_runs_csv(csv, report);
    }
    {
      std::ofstream js(base.string() + "_report.json");
      require(static_cast<bool>(js), ErrorCode::kIo,
              "cannot write " + base.string() + "_report.json");
      json out = to_json(report);
      out["metadata"]["generated_at"] = timestamp();
      out["metadata"]["workers"] = options.workers;
      js << out.dump(2) << '\n';
    }
    if (spec.output.traces) {
      for (std::size_t t = 0; t < tasks; ++t) {
        const std::string stem = base.string() + "_a" + std::to_string(t / reps) + "_r" +
                                 std::to_string(t % reps);
        std::ofstream(stem + "_trace.csv") << outputs[t].trace_csv;
        if (!outputs[t].pairs_csv.empty()) std::ofstream(stem + "_pairs.csv") << outputs[t].pairs_csv;
      }
    }
  }
  return report;
}

void write_runs_csv(std::ostream& out, const ExperimentReport& report) {
  out << "arm,replication,seed,batch_size,eps,gamma,iterations,stop_reason,final_residual,"
         "total_samples,final_coverage,audit_errors,first_error_k\n";
  for (const RunRow& row : report.rows) {
    const Arm& arm = report.arms[static_cast<std::size_t>(row.arm)].arm;
    out << row.arm << ',' << row.replication << ',' << row.seed << ',' << row.batch_size << ','
        << (arm.eps ? fmt(*arm.eps) : "") << ',' << (arm.gamma ? fmt(*arm.gamma) : "") << ','
        << row.iterations << ',' << polyfeas::to_string(row.stop_reason) << ','
        << fmt(row.final_residual) << ',' << row.total_samples << ','
        << (row.final_coverage ? fmt(*row.final_coverage) : "") << ','
        << (row.audit_errors ? std::to_string(*row.audit_errors) : "") << ','
        << (row.first_error_k ? std::to_string(*row.first_error_k) : "") << '\n';
  }
}

json to_json(const ExperimentReport& report) {
  json arms = json::array();
  for (const ArmReport& ar : report.arms) {
    const ArmBounds& b = ar.bounds;
    json bounds = {{"inputs", b.inputs ? polyfeas::to_json(*b.inputs) : json(nullptr)},
                   {"p", opt(b.p)},
                   {"deterministic_budget", opt(b.deterministic_budget)},
                   {"expected_iters_basic", opt(b.expected_basic)},
                   {"expected_iters_growth", opt(b.expected_growth)},
                   {"confident_basic", opt(b.confident_basic)},
                   {"confident_growth", opt(b.confident_growth)},
                   {"notes", b.notes}};
    const Summary& s = ar.iterations;
    arms.push_back({{"index", ar.arm.index},
                    {"batch_size", ar.arm.batch_size},
                    {"eps", opt(ar.arm.eps)},
                    {"gamma", opt(ar.arm.gamma)},
                    {"coverage_stop", ar.arm.coverage_stop},
                    {"iterations",
                     {{"count", s.count},
                      {"mean", s.mean},
                      {"stddev", s.stddev},
                      {"min", s.min},
                      {"q10", s.q10},
                      {"median", s.median},
                      {"q90", s.q90},
                      {"max", s.max}}},
                    {"stop_reasons", ar.stop_reasons},
                    {"bounds", std::move(bounds)}});
  }
  json validations = json::array();
  for (const Validation& v : report.validations) {
    validations.push_back(
        {{"name", v.name}, {"arm", opt(v.arm)}, {"passed", v.passed}, {"detail", v.detail}});
  }
  const ProblemInfo& p = report.problem;
  json problem = {{"dimension", p.dimension},
                  {"type", p.finite ? "finite" : "parametric"},
                  {"size", p.size},
                  {"lipschitz_bound", opt(p.lipschitz)},
                  {"dist_upper", opt(p.dist_upper)},
                  {"dist_exact", opt(p.dist_exact)},
                  {"growth", p.growth ? polyfeas::to_json(*p.growth) : json(nullptr)}};
  return {{"spec", to_json(report.spec)},
          {"problem", std::move(problem)},
          {"runs_csv", report.spec.output.prefix + "_runs.csv"},
          {"arms", std::move(arms)},
          {"validations", std::move(validations)},
          {"all_passed", report.all_passed()},
          {"metadata", {{"tool", "polyfeas"}}}};
}

int exit_code(const ExperimentReport& report) { return report.all_passed() ? 0 : 2; }

}  // namespace polyfeas::harness
