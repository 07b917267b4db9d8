// promdet/include/promdet/cli.h

// Copyright 2026  The promdet Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PROMDET_CLI_H_
#define PROMDET_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace promdet {

/// Runs one `promdet <subcommand> [flags]` invocation. Returns 0 on success,
/// 1 on a runtime failure and 2 on a usage error; `--help` returns 0.
/// `args` excludes the program name.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace promdet

#endif  // PROMDET_CLI_H_
