// Copyright 2026 The finmeas Authors
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

// The finmeas batch front end: loads a model file, runs one command and
// prints a deterministic report.
//
// Exit codes: 0 success, 1 domain error, 2 input or usage error.

#ifndef FINMEAS_CLI_HPP_
#define FINMEAS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace finmeas {

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace finmeas

#endif  // FINMEAS_CLI_HPP_
