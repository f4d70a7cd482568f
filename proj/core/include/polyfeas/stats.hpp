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

#ifndef POLYFEAS_STATS_HPP_
#define POLYFEAS_STATS_HPP_

#include <cstddef>
#include <vector>

namespace polyfeas {

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  double min = 0.0;
  double q10 = 0.0;
  double median = 0.0;
  double q90 = 0.0;
  double max = 0.0;
};

// Linear-interpolated quantile of unsorted data (type 7). q in [0, 1].
double quantile(std::vector<double> values, double q);

// Throws kInvalidArgument on empty input.
Summary summarize(const std::vector<double>& values);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y = slope * x + intercept. Needs at least two
// distinct x values.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace polyfeas

#endif  // POLYFEAS_STATS_HPP_
