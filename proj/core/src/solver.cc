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

#include "polyfeas/solver.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "polyfeas/certification.hpp"
#include "polyfeas/error.hpp"

namespace polyfeas {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kMaxIters:
      return "max_iters";
    case StopReason::kResidualTarget:
      return "residual_target";
    case StopReason::kCoverageTarget:
      return "coverage_target";
  }
  return "unknown";
}

SolverState make_state(Vector x0, std::uint64_t seed) {
  return SolverState{std::move(x0), std::numeric_limits<double>::quiet_NaN(), 0, Rng(seed)};
}

void detail::validate_stop(const StopRule& stop, const ConstraintFamily& family) {
  require(stop.max_iters >= 1, ErrorCode::kInvalidArgument, "stop.max_iters must be >= 1");
  if (stop.residual_target) {
    require(std::isfinite(*stop.residual_target), ErrorCode::kInvalidArgument,
            "stop.residual_target must be finite");
  }
  if (stop.coverage_target) {
    const CoverageTarget& c = *stop.coverage_target;
    require(family.is_finite(), ErrorCode::kUnsupported,
            "coverage stopping needs a finite family");
    require(c.gamma > 0.0 && c.gamma < 1.0, ErrorCode::kInvalidArgument,
            "coverage gamma must lie in (0, 1)");
    require(c.check_every >= 1, ErrorCode::kInvalidArgument, "check_every must be >= 1");
  }
}

void validate(const RunConfig& config, const ConstraintFamily& family) {
  require(config.batch_size >= 1, ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  if (config.replacement == ReplacementMode::kWithout) {
    require(family.is_finite() && static_cast<std::size_t>(config.batch_size) <= family.size(),
            ErrorCode::kInvalidArgument,
            "without-replacement batches need a finite family with batch_size <= m");
  }
  validate(config.step);
  validate(config.region, family.dimension());
  detail::validate_stop(config.stop, family);
  require(config.snapshots.stride >= 1, ErrorCode::kInvalidArgument,
          "snapshot stride must be >= 1");
}

StepOutcome polyak_iteration(SolverState& state, const ConstraintFamily& family,
                             std::int64_t batch_size, ReplacementMode replacement,
                             const StepParams& step, const ProjectionRegion& region) {
  require(state.x.size() == family.dimension(), ErrorCode::kDimensionMismatch,
          "iterate dimension does not match family");
  const SampleBatch batch = sample_batch(family, state.rng, batch_size, replacement);

  // Argmax with ties going to the lowest batch position.
  std::size_t arg = 0;
  double best = evaluate(family, batch.samples[0], state.x);
  for (std::size_t l = 1; l < batch.size(); ++l) {
    const double v = evaluate(family, batch.samples[l], state.x);
    if (v > best) {
      best = v;
      arg = l;
    }
  }

  StepOutcome out;
  out.residual = best;
  out.chosen = static_cast<std::int64_t>(arg);
  if (const auto* index = std::get_if<std::size_t>(&batch.samples[arg])) {
    out.sample_index = static_cast<std::int64_t>(*index);
  }
  out.batch_size = batch_size;
  out.x_before = state.x;

  if (best > 0.0) {
    const Vector g = subgradient(family, batch.samples[arg], state.x);
    state.x = project(region, polyak_step(state.x, best, g, step));
    out.moved = true;
  }
  state.last_residual = best;
  ++state.k;
  return out;
}

SolverState pfm_iterate(SolverState state, const ConstraintFamily& family,
                        const RunConfig& config) {
  validate(config, family);
  polyak_iteration(state, family, config.batch_size, config.replacement, config.step,
                   config.region);
  return state;
}

RunTrace detail::run_loop(const ConstraintFamily& family, const Vector& x0, std::uint64_t seed,
                          const BatchSchedule& schedule, ReplacementMode replacement,
                          const StepParams& step, const ProjectionRegion& region,
                          const StopRule& stop, const SnapshotPolicy& snapshots,
                          const IterationObserver& observer) {
  require(x0.size() == family.dimension(), ErrorCode::kDimensionMismatch,
          "x0 dimension does not match family");
  RunTrace trace;
  trace.final_state = make_state(x0, seed);
  SolverState& state = trace.final_state;

  auto covered = [&]() {
    const CoverageTarget& c = *stop.coverage_target;
    if (state.k % c.check_every != 0) return false;
    return meets_coverage(coverage_exact(family, {state.x, c.eps, c.gamma}), c.gamma);
  };

  while (true) {
    if (stop.coverage_target && covered()) {
      trace.stop_reason = StopReason::kCoverageTarget;
      break;
    }
    if (state.k >= stop.max_iters) {
      trace.stop_reason = StopReason::kMaxIters;
      break;
    }

    const std::int64_t batch_size = schedule(state.k + 1);
    StepOutcome outcome =
        polyak_iteration(state, family, batch_size, replacement, step, region);
    trace.total_samples += batch_size;

    IterationRecord record;
    record.k = state.k;
    record.residual = outcome.residual;
    record.chosen = outcome.chosen;
    record.sample_index = outcome.sample_index;
    record.moved = outcome.moved;
    record.batch_size = batch_size;
    record.cumulative_samples = trace.total_samples;
    const bool keep = snapshots.mode == SnapshotMode::kEvery ||
                      (snapshots.mode == SnapshotMode::kStride && state.k % snapshots.stride == 0);
    if (keep) record.x = state.x;
    trace.records.push_back(std::move(record));
    if (observer) observer(outcome, state);

    if (stop.residual_target && outcome.residual <= *stop.residual_target) {
      trace.stop_reason = StopReason::kResidualTarget;
      break;
    }
  }
  trace.iterations = state.k;
  return trace;
}

RunTrace run_pfm(const ConstraintFamily& family, const Vector& x0, const RunConfig& config) {
  validate(config, family);
  const std::int64_t batch_size = config.batch_size;
  return detail::run_loop(
      family, x0, config.seed, [batch_size](std::int64_t) { return batch_size; },
      config.replacement, config.step, config.region, config.stop, config.snapshots);
}

}  // namespace polyfeas
