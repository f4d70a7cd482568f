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

#ifndef POLYFEAS_TOOLS_SPEC_READER_HPP_
#define POLYFEAS_TOOLS_SPEC_READER_HPP_

// Collects schema violations with JSON-path locations instead of stopping
// at the first one.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace polyfeas::harness {

struct SpecIssue {
  std::string path;
  std::string message;
};

std::string format_issues(const std::vector<SpecIssue>& issues);

class SpecReader {
 public:
  void error(const std::string& path, const std::string& message) {
    issues_.push_back({path, message});
  }
  const std::vector<SpecIssue>& issues() const { return issues_; }
  bool ok() const { return issues_.empty(); }

  // True when `j` is an object; flags keys outside `allowed`.
  bool object(const nlohmann::json& j, const std::string& path,
              std::initializer_list<const char*> allowed);

  // Typed field access. A missing required field and a wrong type are both
  // recorded; the result is empty in either case.
  std::optional<double> number(const nlohmann::json& obj, const char* key, const std::string& path,
                               bool required);
  std::optional<std::int64_t> integer(const nlohmann::json& obj, const char* key,
                                      const std::string& path, bool required);
  std::optional<bool> boolean(const nlohmann::json& obj, const char* key, const std::string& path,
                              bool required);
  std::optional<std::string> text(const nlohmann::json& obj, const char* key,
                                  const std::string& path, bool required);
  std::optional<std::vector<double>> numbers(const nlohmann::json& obj, const char* key,
                                             const std::string& path, bool required);

  // Range helpers record an error and return false when violated.
  bool check(bool condition, const std::string& path, const std::string& message);

 private:
  const nlohmann::json* find(const nlohmann::json& obj, const char* key, const std::string& path,
                             bool required);

  std::vector<SpecIssue> issues_;
};

inline std::string join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

}  // namespace polyfeas::harness

#endif  // POLYFEAS_TOOLS_SPEC_READER_HPP_
