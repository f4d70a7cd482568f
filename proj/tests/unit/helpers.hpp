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

#ifndef POLYFEAS_TESTS_HELPERS_HPP_
#define POLYFEAS_TESTS_HELPERS_HPP_

#include <doctest.h>

#include <initializer_list>
#include <vector>

#include "polyfeas/error.hpp"
#include "polyfeas/types.hpp"
#include "support/random_catalog.hpp"

namespace testing {

inline polyfeas::Vector vec(std::initializer_list<double> v) {
  polyfeas::Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

inline std::vector<double> to_std(const polyfeas::Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

template <class Fn>
polyfeas::ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const polyfeas::Error& e) {
    return e.code();
  }
  FAIL("expected a polyfeas::Error");
  return polyfeas::ErrorCode::kIo;
}

}  // namespace testing

#endif  // POLYFEAS_TESTS_HELPERS_HPP_
