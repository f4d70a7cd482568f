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

#include <doctest.h>

#include "helpers.hpp"
#include "polyfeas/stats.hpp"

using namespace polyfeas;
using testing::error_code_of;

TEST_SUITE("stats") {

TEST_CASE("summary of a small sample") {
  const Summary s = summarize({4, 1, 3, 2, 5});
  CHECK(s.count == 5);
  CHECK(s.mean == 3.0);
  CHECK(s.median == 3.0);
  CHECK(s.min == 1.0);
  CHECK(s.max == 5.0);
  CHECK(s.stddev == doctest::Approx(std::sqrt(2.5)));
  CHECK(s.q10 == doctest::Approx(1.4));
  CHECK(s.q90 == doctest::Approx(4.6));
  CHECK(summarize({7}).stddev == 0.0);
  CHECK(error_code_of([] { summarize({}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("least-squares line") {
  const LinearFit exact = linear_fit({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(exact.slope == doctest::Approx(2.0));
  CHECK(exact.intercept == doctest::Approx(1.0));
  CHECK(exact.r_squared == doctest::Approx(1.0));
  const LinearFit noisy = linear_fit({0, 1, 2, 3}, {0, 1, 0, 1});
  CHECK(noisy.slope == doctest::Approx(0.2));
  CHECK(noisy.r_squared == doctest::Approx(0.2));
  CHECK(error_code_of([] { linear_fit({1, 1}, {2, 3}); }) == ErrorCode::kInvalidArgument);
}

}  // TEST_SUITE
