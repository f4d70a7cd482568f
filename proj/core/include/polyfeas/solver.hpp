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

#ifndef POLYFEAS_SOLVER_HPP_
#define POLYFEAS_SOLVER_HPP_

// Polyak feasibility method: each iteration draws a minibatch, takes the
// sample-maximum residual, and performs one Polyak step on the maximizer.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "polyfeas/constraint.hpp"
#include "polyfeas/polyak.hpp"
#include "polyfeas/types.hpp"

namespace polyfeas {

struct SolverState {
  Vector x;
  // eps_{k-1}: sample-maximum residual measured at x_{k-1}; NaN before the
  // first iteration.
  double last_residual = std::numeric_limits<double>::quiet_NaN();
  std::int64_t k = 0;
  Rng rng;
};

SolverState make_state(Vector x0, std::uint64_t seed);

// Stop once exact coverage of Omega(x_k, eps) reaches 1 - gamma, checked
// every `check_every` iterations. Finite families only; meant for tests and
// benchmarks, since the algorithm itself cannot observe coverage.
struct CoverageTarget {
  double eps = 0.0;
  double gamma = 0.1;
  std::int64_t check_every = 1;
};

struct StopRule {
  std::int64_t max_iters = 10000;
  std::optional<double> residual_target;
  std::optional<CoverageTarget> coverage_target;
};

enum class StopReason { kMaxIters, kResidualTarget, kCoverageTarget };

std::string_view to_string(StopReason reason);

enum class SnapshotMode { kEvery, kStride, kFinalOnly };

struct SnapshotPolicy {
  SnapshotMode mode = SnapshotMode::kFinalOnly;
  std::int64_t stride = 1;
};

struct RunConfig {
  std::int64_t batch_size = 1;
  ReplacementMode replacement = ReplacementMode::kWith;
  StepParams step;
  ProjectionRegion region = NoRegion{};
  StopRule stop;
  std::uint64_t seed = 0;
  SnapshotPolicy snapshots;
};

void validate(const RunConfig& config, const ConstraintFamily& family);

struct IterationRecord {
  std::int64_t k = 0;
  double residual = 0.0;  // eps_{k-1}
  std::int64_t chosen = 0;   // position of the maximizer inside the batch
  std::int64_t sample_index = -1;  // family index of the maximizer; -1 if parametric
  bool moved = false;
  std::int64_t batch_size = 0;
  std::int64_t cumulative_samples = 0;
  std::optional<Vector> x;  // x_k when the snapshot policy keeps it
};

struct RunTrace {
  std::vector<IterationRecord> records;
  SolverState final_state;
  StopReason stop_reason = StopReason::kMaxIters;
  std::int64_t iterations = 0;
  std::int64_t total_samples = 0;
};

// Result of one iteration, before snapshot bookkeeping.
struct StepOutcome {
  double residual = 0.0;
  std::int64_t chosen = 0;
  std::int64_t sample_index = -1;
  bool moved = false;
  std::int64_t batch_size = 0;
  Vector x_before;
};

// One iteration with an explicit batch size and replacement mode. Updates
// state in place. Propagates kInfeasibleConstraint from the Polyak step.
StepOutcome polyak_iteration(SolverState& state, const ConstraintFamily& family,
                             std::int64_t batch_size, ReplacementMode replacement,
                             const StepParams& step, const ProjectionRegion& region);

SolverState pfm_iterate(SolverState state, const ConstraintFamily& family,
                        const RunConfig& config);

// Iterates until the stop rule fires. Identical inputs (seed included)
// reproduce the trace bit for bit.
RunTrace run_pfm(const ConstraintFamily& family, const Vector& x0, const RunConfig& config);

namespace detail {

using BatchSchedule = std::function<std::int64_t(std::int64_t k)>;
using IterationObserver = std::function<void(const StepOutcome&, const SolverState&)>;

RunTrace run_loop(const ConstraintFamily& family, const Vector& x0, std::uint64_t seed,
                  const BatchSchedule& schedule, ReplacementMode replacement,
                  const StepParams& step, const ProjectionRegion& region, const StopRule& stop,
                  const SnapshotPolicy& snapshots, const IterationObserver& observer = {});

void validate_stop(const StopRule& stop, const ConstraintFamily& family);

}  // namespace detail
}  // namespace polyfeas

#endif  // POLYFEAS_SOLVER_HPP_
