// include/vcwarp/cli.h

// Copyright 2026  vcwarp authors

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

#ifndef VCWARP_CLI_H_
#define VCWARP_CLI_H_

#include <string>
#include <vector>

namespace vcwarp {

// Runs one CLI invocation (argv without the program name). Returns the
// process exit code: 0 ok, 2 usage, 3 input error, 4 numerical error.
// Failures print a one-line JSON error object to stderr.
int RunCli(const std::vector<std::string> &args);

}  // namespace vcwarp

#endif  // VCWARP_CLI_H_
