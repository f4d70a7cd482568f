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

#ifndef POLYFEAS_TOOLS_CLI_HPP_
#define POLYFEAS_TOOLS_CLI_HPP_

#include <iosfwd>

namespace polyfeas::harness {

// Entry point of the `polyfeas` command. Exit status: 0 success (and, for
// experiment/audit, every check passed), 2 checks failed, 1 usage or
// execution error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polyfeas::harness

#endif  // POLYFEAS_TOOLS_CLI_HPP_
