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

#ifndef POLYFEAS_CONFIDENT_HPP_
#define POLYFEAS_CONFIDENT_HPP_

// Confident Polyak feasibility method: PolyakFM whose batch size at
// iteration k is ceil(ln(2 k^2 / alpha) / gamma). Every iteration emits the
// pair (x_{k-1}, eps_{k-1}); with probability at least 1 - alpha every
// emitted pair satisfies P(Omega(x, eps)) >= 1 - gamma.

#include <cstdint>
#include <optional>
#include <vector>

#include "polyfeas/certification.hpp"
#include "polyfeas/constraint.hpp"
#include "polyfeas/solver.hpp"

namespace polyfeas {

// ceil((1 / gamma) * ln(2 k^2 / alpha)).
std::int64_t batch_size(double gamma, double alpha, std::int64_t k);

// Smallest n with (1 - gamma)^n <= alpha / (2 k^2). batch_size() never
// undershoots it.
std::int64_t minimal_batch_size(double gamma, double alpha, std::int64_t k);

struct ConfidentConfig {
  double gamma = 0.1;
  double alpha = 0.05;
  StepParams step;
  ProjectionRegion region = NoRegion{};
  StopRule stop;
  std::uint64_t seed = 0;
  SnapshotPolicy snapshots;
};

void validate(const ConfidentConfig& config, const ConstraintFamily& family);

struct CertifiedPair {
  Vector x;
  double eps = 0.0;
  std::int64_t k = 0;  // index of x
  std::int64_t batch_size_used = 0;
  std::int64_t cumulative_samples = 0;
};

struct ConfidentResult {
  RunTrace trace;
  std::vector<CertifiedPair> pairs;
};

ConfidentResult run_confident(const ConstraintFamily& family, const Vector& x0,
                              const ConfidentConfig& config);

struct PairAudit {
  std::int64_t k = 0;
  double eps = 0.0;
  double coverage = 0.0;
  std::optional<WilsonInterval> interval;  // Monte-Carlo audits only
  bool error = false;
};

struct AuditReport {
  double gamma = 0.0;
  bool exact = true;
  std::vector<PairAudit> pairs;
  std::int64_t error_count = 0;
  std::optional<std::int64_t> first_error;  // position in `pairs`
};

// Exact audit on a finite family: a pair is an error when its coverage falls
// short of 1 - gamma.
AuditReport error_audit(const std::vector<CertifiedPair>& pairs, const ConstraintFamily& family,
                        double gamma);

// Monte-Carlo audit for any family. A pair counts as an error only when the
// whole 95% Wilson interval lies below 1 - gamma.
AuditReport error_audit_mc(const std::vector<CertifiedPair>& pairs,
                           const ConstraintFamily& family, double gamma, std::int64_t trials,
                           Rng& rng);

}  // namespace polyfeas

#endif  // POLYFEAS_CONFIDENT_HPP_
