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

#include "polyfeas/confident.hpp"

#include <cmath>
#include <string>

#include "polyfeas/error.hpp"

namespace polyfeas {
namespace {

void require_schedule_args(double gamma, double alpha, std::int64_t k) {
  require(gamma > 0.0 && gamma < 1.0, ErrorCode::kInvalidArgument, "gamma must lie in (0, 1)");
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  require(k >= 1, ErrorCode::kInvalidArgument, "iteration index k must be >= 1");
}

double log_target(double alpha, std::int64_t k) {
  const double kd = static_cast<double>(k);
  return std::log(2.0 * kd * kd / alpha);
}

void record_error(AuditReport& report) {
  if (!report.pairs.back().error) return;
  ++report.error_count;
  if (!report.first_error) {
    report.first_error = static_cast<std::int64_t>(report.pairs.size()) - 1;
  }
}

}  // namespace

std::int64_t batch_size(double gamma, double alpha, std::int64_t k) {
  require_schedule_args(gamma, alpha, k);
  return static_cast<std::int64_t>(std::ceil(log_target(alpha, k) / gamma));
}

std::int64_t minimal_batch_size(double gamma, double alpha, std::int64_t k) {
  require_schedule_args(gamma, alpha, k);
  const double ratio = log_target(alpha, k) / -std::log1p(-gamma);
  auto n = static_cast<std::int64_t>(std::ceil(ratio));
  // Guard the ceiling against rounding in either direction.
  const double kd = static_cast<double>(k);
  const double target = alpha / (2.0 * kd * kd);
  while (n > 1 && std::pow(1.0 - gamma, static_cast<double>(n - 1)) <= target) --n;
  while (std::pow(1.0 - gamma, static_cast<double>(n)) > target) ++n;
  return n;
}

void validate(const ConfidentConfig& config, const ConstraintFamily& family) {
  require(config.gamma > 0.0 && config.gamma < 1.0, ErrorCode::kInvalidArgument,
          "gamma must lie in (0, 1)");
  require(config.alpha > 0.0 && config.alpha < 1.0, ErrorCode::kInvalidArgument,
          "alpha must lie in (0, 1)");
  validate(config.step);
  validate(config.region, family.dimension());
  detail::validate_stop(config.stop, family);
  require(config.snapshots.stride >= 1, ErrorCode::kInvalidArgument,
          "snapshot stride must be >= 1");
}

ConfidentResult run_confident(const ConstraintFamily& family, const Vector& x0,
                              const ConfidentConfig& config) {
  validate(config, family);
  ConfidentResult result;
  const double gamma = config.gamma;
  const double alpha = config.alpha;
  std::int64_t cumulative = 0;
  result.trace = detail::run_loop(
      family, x0, config.seed,
      [gamma, alpha](std::int64_t k) { return batch_size(gamma, alpha, k); },
      ReplacementMode::kWith, config.step, config.region, config.stop, config.snapshots,
      [&](const StepOutcome& outcome, const SolverState& state) {
        cumulative += outcome.batch_size;
        result.pairs.push_back(CertifiedPair{outcome.x_before, outcome.residual, state.k - 1,
                                             outcome.batch_size, cumulative});
      });
  return result;
}

AuditReport error_audit(const std::vector<CertifiedPair>& pairs, const ConstraintFamily& family,
                        double gamma) {
  require(family.is_finite(), ErrorCode::kUnsupported,
          "exact audit needs a finite family; use error_audit_mc");
  require(gamma > 0.0 && gamma < 1.0, ErrorCode::kInvalidArgument, "gamma must lie in (0, 1)");
  AuditReport report;
  report.gamma = gamma;
  report.exact = true;
  report.pairs.reserve(pairs.size());
  for (const CertifiedPair& pair : pairs) {
    PairAudit audit;
    audit.k = pair.k;
    audit.eps = pair.eps;
    audit.coverage = coverage_exact(family, {pair.x, pair.eps, gamma});
    audit.error = !meets_coverage(audit.coverage, gamma);
    report.pairs.push_back(audit);
    record_error(report);
  }
  return report;
}

AuditReport error_audit_mc(const std::vector<CertifiedPair>& pairs,
                           const ConstraintFamily& family, double gamma, std::int64_t trials,
                           Rng& rng) {
  require(gamma > 0.0 && gamma < 1.0, ErrorCode::kInvalidArgument, "gamma must lie in (0, 1)");
  AuditReport report;
  report.gamma = gamma;
  report.exact = false;
  report.pairs.reserve(pairs.size());
  for (const CertifiedPair& pair : pairs) {
    const CoverageEstimate est = coverage_mc(family, {pair.x, pair.eps, gamma}, trials, rng);
    PairAudit audit;
    audit.k = pair.k;
    audit.eps = pair.eps;
    audit.coverage = est.estimate;
    audit.interval = est.interval;
    audit.error = est.interval.upper < (1.0 - gamma) - kCoverageSlack;
    report.pairs.push_back(audit);
    record_error(report);
  }
  return report;
}

}  // namespace polyfeas
