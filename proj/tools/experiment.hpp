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

#ifndef POLYFEAS_TOOLS_EXPERIMENT_HPP_
#define POLYFEAS_TOOLS_EXPERIMENT_HPP_

// Seed-replicated experiments: a JSON spec names a problem, a solver and
// targets; the runner executes every (arm, replication) pair, attaches the
// closed-form bounds and evaluates the validation rules.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "polyfeas/bounds.hpp"
#include "polyfeas/polyak.hpp"
#include "polyfeas/problem_io.hpp"
#include "polyfeas/solver.hpp"
#include "polyfeas/stats.hpp"
#include "spec_reader.hpp"

namespace polyfeas::harness {

struct FileSource {
  std::filesystem::path path;
};

using ProblemSource = std::variant<FileSource, GeneratorSpec>;

enum class SolverKind { kPfm, kConfident };

struct SolverSpec {
  SolverKind kind = SolverKind::kPfm;
  std::vector<std::int64_t> batch_sizes{1};  // pfm only
  ReplacementMode replacement = ReplacementMode::kWith;
  StepParams step;
  ProjectionRegion region = NoRegion{};
  std::int64_t max_iters = 10000;
  std::optional<double> residual_target;
  double gamma = 0.1;  // confident only
  double alpha = 0.05;
};

// A target gives eps either directly or relative to M * dist0. For pfm with a
// gamma the run stops on certified coverage (finite families); otherwise
// eps becomes a residual target. For confident, gamma overrides the audit
// level.
struct TargetSpec {
  std::optional<double> eps;
  std::optional<double> eps_relative;
  std::optional<double> gamma;
  std::int64_t check_every = 1;
};

struct OutputSpec {
  std::filesystem::path dir = ".";
  std::string prefix = "experiment";
  bool traces = false;
};

struct ExperimentSpec {
  ProblemSource problem = FileSource{};
  SolverSpec solver;
  std::int64_t replications = 1;
  std::uint64_t seed = 0;
  std::vector<TargetSpec> targets;
  OutputSpec output;
};

struct SpecResult {
  std::optional<ExperimentSpec> spec;
  std::vector<SpecIssue> errors;
};

// Full schema check. Relative file paths resolve against `base_dir`.
SpecResult validate_spec(const std::string& raw, const std::filesystem::path& base_dir = {});

// Defaults filled in; the same shape validate_spec accepts.
nlohmann::json to_json(const ExperimentSpec& spec);

struct Arm {
  std::int64_t index = 0;
  std::int64_t batch_size = 0;  // 0 for confident (growing schedule)
  std::optional<double> eps;    // resolved absolute eps
  std::optional<double> gamma;  // coverage level of the target or audit
  bool coverage_stop = false;
  std::int64_t check_every = 1;
};

struct RunRow {
  std::int64_t arm = 0;
  std::int64_t replication = 0;
  std::uint64_t seed = 0;
  std::int64_t batch_size = 0;
  std::int64_t iterations = 0;
  StopReason stop_reason = StopReason::kMaxIters;
  double final_residual = 0.0;
  std::int64_t total_samples = 0;
  std::optional<double> final_coverage;  // exact coverage of x_final at eps
  std::optional<std::int64_t> audit_errors;
  std::optional<std::int64_t> first_error_k;
};

struct ArmBounds {
  std::optional<BoundInputs> inputs;
  std::optional<double> p;
  std::optional<std::int64_t> deterministic_budget;
  std::optional<double> expected_basic;
  std::optional<double> expected_growth;
  std::optional<std::int64_t> confident_basic;
  std::optional<double> confident_growth;
  std::vector<std::string> notes;  // why a bound was skipped
};

struct ArmReport {
  Arm arm;
  Summary iterations;
  std::map<std::string, std::int64_t> stop_reasons;
  ArmBounds bounds;
};

struct Validation {
  std::string name;
  std::optional<std::int64_t> arm;
  bool passed = false;
  std::string detail;
};

struct ProblemInfo {
  Eigen::Index dimension = 0;
  bool finite = true;
  std::size_t size = 0;
  std::optional<double> lipschitz;
  std::optional<double> dist_upper;
  std::optional<double> dist_exact;
  std::optional<GrowthProfile> growth;
};

struct ExperimentReport {
  ExperimentSpec spec;
  ProblemInfo problem;
  std::vector<RunRow> rows;  // ordered by (arm, replication)
  std::vector<ArmReport> arms;
  std::vector<Validation> validations;
  bool all_passed() const;
};

struct RunOptions {
  int workers = 1;
  bool write_files = true;
};

// Throws polyfeas::Error on execution problems (missing file, solver
// mismatch). Validation failures are reported, not thrown.
ExperimentReport run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

void write_runs_csv(std::ostream& out, const ExperimentReport& report);
nlohmann::json to_json(const ExperimentReport& report);

// 0 when every validation passed, 2 otherwise.
int exit_code(const ExperimentReport& report);

}  // namespace polyfeas::harness

#endif  // POLYFEAS_TOOLS_EXPERIMENT_HPP_
