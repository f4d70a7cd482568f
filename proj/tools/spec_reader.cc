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

#include "spec_reader.hpp"

#include <cmath>

namespace polyfeas::harness {

std::string format_issues(const std::vector<SpecIssue>& issues) {
  std::string out;
  for (const SpecIssue& issue : issues) {
    if (!out.empty()) out += '\n';
    out += issue.path + ": " + issue.message;
  }
  return out;
}

bool SpecReader::object(const nlohmann::json& j, const std::string& path,
                        std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    error(path.empty() ? "(root)" : path, "expected an object");
    return false;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) error(join(path, it.key().c_str()), "unknown key");
  }
  return true;
}

const nlohmann::json* SpecReader::find(const nlohmann::json& obj, const char* key,
                                       const std::string& path, bool required) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) error(join(path, key), "missing required field");
    return nullptr;
  }
  return &*it;
}

std::optional<double> SpecReader::number(const nlohmann::json& obj, const char* key,
                                         const std::string& path, bool required) {
  const nlohmann::json* j = find(obj, key, path, required);
  if (j == nullptr) return std::nullopt;
  if (!j->is_number() || !std::isfinite(j->get<double>())) {
    error(join(path, key), "expected a finite number");
    return std::nullopt;
  }
  return j->get<double>();
}

std::optional<std::int64_t> SpecReader::integer(const nlohmann::json& obj, const char* key,
                                                const std::string& path, bool required) {
  const nlohmann::json* j = find(obj, key, path, required);
  if (j == nullptr) return std::nullopt;
  if (!j->is_number_integer()) {
    error(join(path, key), "expected an integer");
    return std::nullopt;
  }
  return j->get<std::int64_t>();
}

std::optional<bool> SpecReader::boolean(const nlohmann::json& obj, const char* key,
                                        const std::string& path, bool required) {
  const nlohmann::json* j = find(obj, key, path, required);
  if (j == nullptr) return std::nullopt;
  if (!j->is_boolean()) {
    error(join(path, key), "expected true or false");
    return std::nullopt;
  }
  return j->get<bool>();
}

std::optional<std::string> SpecReader::text(const nlohmann::json& obj, const char* key,
                                            const std::string& path, bool required) {
  const nlohmann::json* j = find(obj, key, path, required);
  if (j == nullptr) return std::nullopt;
  if (!j->is_string()) {
    error(join(path, key), "expected a string");
    return std::nullopt;
  }
  return j->get<std::string>();
}

std::optional<std::vector<double>> SpecReader::numbers(const nlohmann::json& obj, const char* key,
                                                       const std::string& path, bool required) {
  const nlohmann::json* j = find(obj, key, path, required);
  if (j == nullptr) return std::nullopt;
  if (!j->is_array()) {
    error(join(path, key), "expected an array of numbers");
    return std::nullopt;
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < j->size(); ++i) {
    const nlohmann::json& v = (*j)[i];
    if (!v.is_number()) {
      error(join(path, key) + "[" + std::to_string(i) + "]", "expected a number");
      return std::nullopt;
    }
    out.push_back(v.get<double>());
  }
  return out;
}

bool SpecReader::check(bool condition, const std::string& path, const std::string& message) {
  if (!condition) error(path, message);
  return condition;
}

}  // namespace polyfeas::harness
