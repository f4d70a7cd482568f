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

#ifndef POLYFEAS_TYPES_HPP_
#define POLYFEAS_TYPES_HPP_

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace polyfeas {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Every random stream in the library is a 64-bit Mersenne twister. Streams
// are owned by the caller and never shared between threads.
using Rng = std::mt19937_64;

// Independent stream for shard/replication `index` of a base seed. Distinct
// indices give statistically independent streams via seed_seq mixing.
Rng derive_stream(std::uint64_t base_seed, std::uint64_t index);

}  // namespace polyfeas

#endif  // POLYFEAS_TYPES_HPP_
