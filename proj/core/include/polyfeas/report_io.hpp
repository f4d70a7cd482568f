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

#ifndef POLYFEAS_REPORT_IO_HPP_
#define POLYFEAS_REPORT_IO_HPP_

// CSV and JSON exports for traces, certified pairs and audits. Doubles are
// written in shortest round-trip form, so equal runs give equal bytes.

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polyfeas/bounds.hpp"
#include "polyfeas/confident.hpp"
#include "polyfeas/solver.hpp"

namespace polyfeas {

std::string format_double(double v);

// Columns: k,residual,moved,batch_size,cumulative_samples,stop_reason. The
// stop reason is filled on the last row only.
void write_trace_csv(std::ostream& out, const RunTrace& trace);

// Columns: k,eps,batch_size,cumulative_samples,x0,...,x{n-1}. The point
// columns let `audit` recompute coverage offline.
void write_pairs_csv(std::ostream& out, const std::vector<CertifiedPair>& pairs);
std::vector<CertifiedPair> read_pairs_csv(std::istream& in);

nlohmann::json to_json(const AuditReport& report);
nlohmann::json to_json(const StepParams& step);
nlohmann::json to_json(const ProjectionRegion& region);
nlohmann::json to_json(const StopRule& stop);
nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const ConfidentConfig& config);
nlohmann::json to_json(const BoundInputs& inputs);
nlohmann::json to_json(const GrowthProfile& growth);

}  // namespace polyfeas

#endif  // POLYFEAS_REPORT_IO_HPP_
