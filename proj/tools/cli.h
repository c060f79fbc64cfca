// Copyright 2026 The pcnhijack Authors
//
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

// Command-line front end of the experiments. Lives in a library so tests can
// drive it without spawning processes.

#ifndef PCNHIJACK_TOOLS_CLI_H_
#define PCNHIJACK_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace pcnhijack::cli {

// Runs one invocation. `args` excludes the program name. CSV goes to
// --out (plus a <out>.json sidecar) or to `out` when --out is absent;
// diagnostics go to `err`. Returns the process exit status.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace pcnhijack::cli

#endif  // PCNHIJACK_TOOLS_CLI_H_
