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

#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "experiment.hpp"
#include "generators.hpp"
#include "polyfeas/bounds.hpp"
#include "polyfeas/certification.hpp"
#include "polyfeas/confident.hpp"
#include "polyfeas/error.hpp"
#include "polyfeas/problem_io.hpp"
#include "polyfeas/report_io.hpp"
#include "polyfeas/solver.hpp"

namespace polyfeas::harness {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::optional<std::string> out_dir;
  std::string format = "csv";
};

// Writes `text` to <out-dir>/<name> when an output directory is set, else to
// `out`. Returns the path written, if any.
std::optional<fs::path> emit(const GlobalOptions& g, const std::string& name,
                             const std::string& text, std::ostream& out) {
  if (!g.out_dir) {
    out << text;
    return std::nullopt;
  }
  fs::create_directories(*g.out_dir);
  const fs::path path = fs::path(*g.out_dir) / name;
  std::ofstream file(path);
  require(static_cast<bool>(file), ErrorCode::kIo, "cannot write " + path.string());
  file << text;
  return path;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SolveOptions {
  std::string problem;
  std::string solver = "pfm";
  std::int64_t batch_size = 1;
  std::string replacement = "with";
  double delta = 1.0;
  double gamma = 0.1;
  double alpha = 0.05;
  std::int64_t max_iters = 10000;
  std::optional<double> residual_target;
  std::optional<double> coverage_eps;
  std::int64_t check_every = 1;
};

int cmd_solve(const GlobalOptions& g, const SolveOptions& o, std::ostream& out, std::ostream& err) {
  const ProblemDocument doc = read_problem_file(o.problem);
  require(doc.metadata.x0.has_value(), ErrorCode::kPrecondition,
          "problem file has no metadata.x0 to start from");
  StopRule stop;
  stop.max_iters = o.max_iters;
  stop.residual_target = o.residual_target;
  if (o.coverage_eps) stop.coverage_target = CoverageTarget{*o.coverage_eps, o.gamma, o.check_every};
  const std::uint64_t seed = g.seed.value_or(0);

  RunTrace trace;
  std::vector<CertifiedPair> pairs;
  json config;
  if (o.solver == "pfm") {
    RunConfig c;
    c.batch_size = o.batch_size;
    c.replacement = o.replacement == "without" ? ReplacementMode::kWithout : ReplacementMode::kWith;
    c.step.delta = o.delta;
    c.stop = stop;
    c.seed = seed;
    config = to_json(c);
    trace = run_pfm(doc.family, *doc.metadata.x0, c);
  } else {
    ConfidentConfig c;
    c.gamma = o.gamma;
    c.alpha = o.alpha;
    c.step.delta = o.delta;
    c.stop = stop;
    c.seed = seed;
    config = to_json(c);
    ConfidentResult r = run_confident(doc.family, *doc.metadata.x0, c);
    trace = std::move(r.trace);
    pairs = std::move(r.pairs);
  }

  if (g.format == "json") {
    json records = json::array();
    for (const IterationRecord& r : trace.records) {
      records.push_back({{"k", r.k},
                         {"residual", r.residual},
                         {"moved", r.moved},
                         {"batch_size", r.batch_size},
                         {"cumulative_samples", r.cumulative_samples}});
    }
    json doc_out = {{"config", config},
                    {"stop_reason", std::string(to_string(trace.stop_reason))},
                    {"iterations", trace.iterations},
                    {"total_samples", trace.total_samples},
                    {"final_x", vector_to_json(trace.final_state.x)},
                    {"final_residual", trace.final_state.last_residual},
                    {"records", std::move(records)}};
    emit(g, "trace.json", doc_out.dump(2) + "\n", out);
  } else {
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    emit(g, "trace.csv", csv.str(), out);
  }
  if (g.out_dir) {
    emit(g, "config.json", config.dump(2) + "\n", out);
    if (!pairs.empty()) {
      std::ostringstream csv;
      write_pairs_csv(csv, pairs);
      emit(g, "pairs.csv", csv.str(), out);
    }
  }
  err << "stop: " << to_string(trace.stop_reason) << " after " << trace.iterations
      << " iterations, " << trace.total_samples << " samples\n";
  return 0;
}

int cmd_experiment(const GlobalOptions& g, const std::string& spec_path, std::ostream& out,
                   std::ostream& err) {
  const fs::path path(spec_path);
  SpecResult parsed = validate_spec(read_text(path), path.parent_path());
  if (!parsed.spec) {
    err << "invalid experiment spec " << spec_path << ":\n" << format_issues(parsed.errors) << '\n';
    return 1;
  }
  ExperimentSpec spec = std::move(*parsed.spec);
  if (g.seed) {
    spec.seed = *g.seed;
    if (auto* gen = std::get_if<GeneratorSpec>(&spec.problem)) gen->seed = *g.seed;
  }
  if (g.out_dir) spec.output.dir = *g.out_dir;
  RunOptions options;
  options.workers = g.workers;
  const ExperimentReport report = run_experiment(spec, options);
  if (g.format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << "check,arm,passed,detail\n";
    for (const Validation& v : report.validations) {
      out << v.name << ',' << (v.arm ? std::to_string(*v.arm) : "") << ','
          << (v.passed ? "pass" : "fail") << ",\"" << v.detail << "\"\n";
    }
  }
  err << "wrote " << (spec.output.dir / (spec.output.prefix + "_runs.csv")).string() << " and "
      << (spec.output.dir / (spec.output.prefix + "_report.json")).string() << '\n';
  return exit_code(report);
}

struct BoundsOptions {
  double lipschitz = 1.0;
  double dist0 = 1.0;
  std::vector<double> eps{0.1};
  double gamma = 0.1;
  std::vector<std::int64_t> batch_sizes{1};
  std::optional<double> mu;
  double degree = 1.0;
  double delta_mass = 1.0;
};

int cmd_bounds(const GlobalOptions& g, const BoundsOptions& o, std::ostream& out) {
  std::optional<GrowthProfile> growth;
  if (o.mu) {
    growth = GrowthProfile{*o.mu, o.degree, o.delta_mass};
    validate(*growth);
  }
  json rows = json::array();
  std::ostringstream csv;
  csv << "lipschitz,dist0,eps,gamma,batch_size,p,N,E,E_growth,confident_basic,confident_growth\n";
  for (double eps : o.eps) {
    for (std::int64_t l : o.batch_sizes) {
      BoundInputs in{o.lipschitz, o.dist0, eps, o.gamma, l};
      validate(in);
      const double p = success_prob(in);
      const std::int64_t n = deterministic_budget(in);
      const double e = expected_iters_basic(in);
      std::optional<GrowthProfile> usable;
      if (growth && in.gamma < growth->delta_mass) usable = growth;
      std::optional<double> eg;
      if (usable) eg = expected_iters_growth(in, *usable);
      const ConfidentBounds cb = confident_iter_bounds(in, usable);
      csv << format_double(in.lipschitz) << ',' << format_double(in.dist0) << ','
          << format_double(eps) << ',' << format_double(in.gamma) << ',' << l << ','
          << format_double(p) << ',' << n << ',' << format_double(e) << ','
          << (eg ? format_double(*eg) : "") << ',' << cb.basic << ','
          << (cb.growth ? format_double(*cb.growth) : "") << '\n';
      rows.push_back({{"inputs", to_json(in)},
                      {"p", p},
                      {"N", n},
                      {"E", e},
                      {"E_growth", eg ? json(*eg) : json(nullptr)},
                      {"confident_basic", cb.basic},
                      {"confident_growth", cb.growth ? json(*cb.growth) : json(nullptr)}});
    }
  }
  if (g.format == "json") {
    json doc = {{"growth", growth ? to_json(*growth) : json(nullptr)}, {"rows", std::move(rows)}};
    emit(g, "bounds.json", doc.dump(2) + "\n", out);
  } else {
    emit(g, "bounds.csv", csv.str(), out);
  }
  return 0;
}

struct GenOptions {
  std::string name;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<double> sharpness;
  std::optional<double> interior_radius;
  std::optional<double> x0_offset;
  std::optional<double> core_fraction;
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<double> x0;
  std::optional<double> b_lo;
  std::optional<double> b_hi;
};

int cmd_gen(const GlobalOptions& g, const GenOptions& o, std::ostream& out) {
  // Build the generator object through the same reader the experiment
  // specs use, so both paths share defaults and range checks.
  json params = json::object();
  auto put = [&](const char* key, const auto& v) {
    if (v) params[key] = *v;
  };
  put("n", o.n);
  put("m", o.m);
  put("sharpness", o.sharpness);
  put("interior_radius", o.interior_radius);
  put("x0_offset", o.x0_offset);
  put("core_fraction", o.core_fraction);
  put("lo", o.lo);
  put("hi", o.hi);
  put("x0", o.x0);
  put("b_lo", o.b_lo);
  put("b_hi", o.b_hi);
  SpecReader reader;
  const auto spec =
      read_generator(reader, {{"name", o.name}, {"params", params}}, "gen", g.seed.value_or(0));
  if (!spec) fail(ErrorCode::kInvalidArgument, "\n" + format_issues(reader.issues()));
  const ProblemDocument doc = to_document(generate(*spec));
  json j = problem_to_json(doc);
  j["metadata"]["generator"] = to_json(*spec);
  emit(g, "problem.json", j.dump(2) + "\n", out);
  return 0;
}

struct AuditOptions {
  std::string problem;
  std::string pairs;
  double gamma = 0.1;
  std::optional<std::int64_t> trials;
};

int cmd_audit(const GlobalOptions& g, const AuditOptions& o, std::ostream& out) {
  const ProblemDocument doc = read_problem_file(o.problem);
  std::ifstream in(o.pairs);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + o.pairs);
  const std::vector<CertifiedPair> pairs = read_pairs_csv(in);
  AuditReport report;
  if (doc.family.is_finite() && !o.trials) {
    report = error_audit(pairs, doc.family, o.gamma);
  } else {
    Rng rng(g.seed.value_or(0));
    report = error_audit_mc(pairs, doc.family, o.gamma, o.trials.value_or(100000), rng);
  }
  if (g.format == "json") {
    emit(g, "audit.json", to_json(report).dump(2) + "\n", out);
  } else {
    std::ostringstream csv;
    csv << "k,eps,coverage,lower,upper,error\n";
    for (const PairAudit& p : report.pairs) {
      csv << p.k << ',' << format_double(p.eps) << ',' << format_double(p.coverage) << ','
          << (p.interval ? format_double(p.interval->lower) : "") << ','
          << (p.interval ? format_double(p.interval->upper) : "") << ',' << (p.error ? 1 : 0)
          << '\n';
    }
    emit(g, "audit.csv", csv.str(), out);
  }
  return report.error_count == 0 ? 0 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic convex feasibility solvers and experiment harness", "polyfeas"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed (run seed, generator seed or experiment base seed)");
  app.add_option("--workers", g.workers, "Concurrent replications for `experiment`")
      ->check(CLI::PositiveNumber);
  app.add_option("--out-dir", g.out_dir, "Write outputs to this directory instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  SolveOptions so;
  CLI::App* solve = app.add_subcommand("solve", "Run one solver on a problem file and emit the trace");
  solve->add_option("problem", so.problem, "Problem JSON file")->required()->check(CLI::ExistingFile);
  solve->add_option("--solver", so.solver)->check(CLI::IsMember({"pfm", "confident"}));
  solve->add_option("-L,--batch-size", so.batch_size)->check(CLI::PositiveNumber);
  solve->add_option("--replacement", so.replacement)->check(CLI::IsMember({"with", "without"}));
  solve->add_option("--delta", so.delta, "Extrapolation factor in (0, 2)");
  solve->add_option("--gamma", so.gamma, "Coverage level for confident / coverage stop");
  solve->add_option("--alpha", so.alpha, "Allowed error probability (confident)");
  solve->add_option("--max-iters", so.max_iters);
  solve->add_option("--residual-target", so.residual_target);
  solve->add_option("--coverage-eps", so.coverage_eps,
                    "Stop once exact coverage at this eps reaches 1 - gamma (finite families)");
  solve->add_option("--check-every", so.check_every);

  std::string spec_path;
  CLI::App* experiment = app.add_subcommand("experiment", "Run a seed-replicated experiment spec");
  experiment->add_option("spec", spec_path, "Experiment spec JSON")->required()->check(CLI::ExistingFile);

  BoundsOptions bo;
  CLI::App* bounds = app.add_subcommand("bounds", "Tabulate the closed-form iteration bounds");
  bounds->add_option("-M,--lipschitz", bo.lipschitz);
  bounds->add_option("--dist0", bo.dist0);
  bounds->add_option("--eps", bo.eps)->expected(1, -1);
  bounds->add_option("--gamma", bo.gamma);
  bounds->add_option("-L,--batch-size", bo.batch_sizes)->expected(1, -1);
  bounds->add_option("--mu", bo.mu, "Growth constant; enables the growth bounds");
  bounds->add_option("--degree", bo.degree);
  bounds->add_option("--delta-mass", bo.delta_mass);

  GenOptions go;
  CLI::App* gen = app.add_subcommand("gen", "Generate a problem file with ground-truth metadata");
  gen->add_option("generator", go.name)
      ->required()
      ->check(CLI::IsMember({"linear", "quadratic", "interval", "parametric_linear"}));
  gen->add_option("--n", go.n);
  gen->add_option("--m", go.m);
  gen->add_option("--sharpness", go.sharpness);
  gen->add_option("--interior-radius", go.interior_radius);
  gen->add_option("--x0-offset", go.x0_offset);
  gen->add_option("--core-fraction", go.core_fraction);
  gen->add_option("--lo", go.lo);
  gen->add_option("--hi", go.hi);
  gen->add_option("--x0", go.x0);
  gen->add_option("--b-lo", go.b_lo);
  gen->add_option("--b-hi", go.b_hi);

  AuditOptions ao;
  CLI::App* audit = app.add_subcommand("audit", "Check certified pairs against exact or sampled coverage");
  audit->add_option("problem", ao.problem)->required()->check(CLI::ExistingFile);
  audit->add_option("pairs", ao.pairs, "Pairs CSV written by `solve --solver confident`")
      ->required()
      ->check(CLI::ExistingFile);
  audit->add_option("--gamma", ao.gamma);
  audit->add_option("--trials", ao.trials, "Monte-Carlo trials (default: exact on finite families)");

  for (CLI::App* sub : {solve, experiment, bounds, gen, audit}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*solve) return cmd_solve(g, so, out, err);
    if (*experiment) return cmd_experiment(g, spec_path, out, err);
    if (*bounds) return cmd_bounds(g, bo, out);
    if (*gen) return cmd_gen(g, go, out);
    if (*audit) return cmd_audit(g, ao, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace polyfeas::harness
