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

#include "polyfeas/report_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "polyfeas/error.hpp"
#include "polyfeas/problem_io.hpp"

namespace polyfeas {
namespace {

using nlohmann::json;

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::kParse, "pairs csv line " + std::to_string(line) + ": bad number '" + s + "'");
}

std::int64_t parse_int(const std::string& s, std::size_t line) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorCode::kParse, "pairs csv line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << "k,residual,moved,batch_size,cumulative_samples,stop_reason\n";
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const IterationRecord& r = trace.records[i];
    out << r.k << ',' << format_double(r.residual) << ',' << (r.moved ? 1 : 0) << ','
        << r.batch_size << ',' << r.cumulative_samples << ',';
    if (i + 1 == trace.records.size()) out << to_string(trace.stop_reason);
    out << '\n';
  }
}

void write_pairs_csv(std::ostream& out, const std::vector<CertifiedPair>& pairs) {
  const Eigen::Index n = pairs.empty() ? 0 : pairs.front().x.size();
  out << "k,eps,batch_size,cumulative_samples";
  for (Eigen::Index j = 0; j < n; ++j) out << ",x" << j;
  out << '\n';
  for (const CertifiedPair& p : pairs) {
    out << p.k << ',' << format_double(p.eps) << ',' << p.batch_size_used << ','
        << p.cumulative_samples;
    for (Eigen::Index j = 0; j < p.x.size(); ++j) out << ',' << format_double(p.x(j));
    out << '\n';
  }
}

std::vector<CertifiedPair> read_pairs_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kParse, "pairs csv is empty");
  const std::vector<std::string> header = split_row(line);
  if (header.size() < 4 || header[0] != "k" || header[1] != "eps" || header[2] != "batch_size" ||
      header[3] != "cumulative_samples") {
    fail(ErrorCode::kParse,
         "pairs csv header must start with k,eps,batch_size,cumulative_samples");
  }
  const std::size_t n = header.size() - 4;
  std::vector<CertifiedPair> pairs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != header.size()) {
      fail(ErrorCode::kParse, "pairs csv line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header.size()) + " cells");
    }
    CertifiedPair p;
    p.k = parse_int(cells[0], line_no);
    p.eps = parse_double(cells[1], line_no);
    p.batch_size_used = parse_int(cells[2], line_no);
    p.cumulative_samples = parse_int(cells[3], line_no);
    p.x.resize(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      p.x(static_cast<Eigen::Index>(j)) = parse_double(cells[4 + j], line_no);
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

json to_json(const AuditReport& report) {
  json rows = json::array();
  for (const PairAudit& p : report.pairs) {
    json row = {{"k", p.k}, {"eps", p.eps}, {"coverage", p.coverage}, {"error", p.error}};
    if (p.interval) row["interval"] = {p.interval->lower, p.interval->upper};
    rows.push_back(std::move(row));
  }
  json out = {{"gamma", report.gamma},
              {"exact", report.exact},
              {"pair_count", report.pairs.size()},
              {"error_count", report.error_count},
              {"first_error", nullptr},
              {"pairs", std::move(rows)}};
  if (report.first_error) out["first_error"] = *report.first_error;
  return out;
}

json to_json(const StepParams& step) { return {{"delta", step.delta}}; }

json to_json(const ProjectionRegion& region) {
  if (const auto* box = std::get_if<BoxRegion>(&region)) {
    return {{"kind", "box"}, {"lo", vector_to_json(box->lo)}, {"hi", vector_to_json(box->hi)}};
  }
  if (const auto* ball = std::get_if<BallRegion>(&region)) {
    return {{"kind", "ball"}, {"center", vector_to_json(ball->center)}, {"radius", ball->radius}};
  }
  return {{"kind", "none"}};
}

json to_json(const StopRule& stop) {
  json out = {{"max_iters", stop.max_iters}, {"residual_target", nullptr},
              {"coverage_target", nullptr}};
  if (stop.residual_target) out["residual_target"] = *stop.residual_target;
  if (stop.coverage_target) {
    out["coverage_target"] = {{"eps", stop.coverage_target->eps},
                              {"gamma", stop.coverage_target->gamma},
                              {"check_every", stop.coverage_target->check_every}};
  }
  return out;
}

json to_json(const RunConfig& config) {
  return {{"solver", "pfm"},
          {"batch_size", config.batch_size},
          {"replacement", std::string(to_string(config.replacement))},
          {"step", to_json(config.step)},
          {"region", to_json(config.region)},
          {"stop", to_json(config.stop)},
          {"seed", config.seed}};
}

json to_json(const ConfidentConfig& config) {
  return {{"solver", "confident"},
          {"gamma", config.gamma},
          {"alpha", config.alpha},
          {"step", to_json(config.step)},
          {"region", to_json(config.region)},
          {"stop", to_json(config.stop)},
          {"seed", config.seed}};
}

json to_json(const BoundInputs& inputs) {
  return {{"lipschitz", inputs.lipschitz}, {"dist0", inputs.dist0},   {"eps", inputs.eps},
          {"gamma", inputs.gamma},         {"batch_size", inputs.batch_size}};
}

json to_json(const GrowthProfile& growth) {
  return {{"mu", growth.mu}, {"degree", growth.degree}, {"delta_mass", growth.delta_mass}};
}

}  // namespace polyfeas
