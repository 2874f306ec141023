// Copyright 2026 The Subvec Authors.
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

#ifndef SUBVEC_CLI_H_
#define SUBVEC_CLI_H_

#include <iosfwd>
#include <span>
#include <string>

namespace subvec::cli {

// Runs one command. `args[0]` is the command name, the rest are its flags.
// Returns the process exit code; failures print a one-line diagnostic to
// `err`.
int run(std::span<const std::string> args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace subvec::cli

#endif  // SUBVEC_CLI_H_
