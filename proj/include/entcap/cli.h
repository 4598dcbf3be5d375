// Copyright 2026 The entcap Authors.
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

#ifndef ENTCAP_CLI_H_
#define ENTCAP_CLI_H_

#include <ostream>

namespace entcap {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;      // operational failure
inline constexpr int kExitInputFormat = 2;  // malformed or missing input

// Entry point of the entcap binary: subcommands templatize, candidates,
// fill, eval, pipeline and oracle-check.
int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err);

}  // namespace entcap

#endif  // ENTCAP_CLI_H_
