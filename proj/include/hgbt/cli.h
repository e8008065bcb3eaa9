// Copyright 2026 The hgbt Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HGBT_CLI_H_
#define HGBT_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace hgbt {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/*!
 * \brief entry point of the `hgbt` command: train | predict | eval | bench.
 * \param args argument vector without the program name
 * \return 0 on success, 1 on a runtime or validation failure, 2 on a usage error
 */
int RunCli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

/*! \brief shortest decimal text that parses back to the same double */
std::string FormatDouble(double v);

}  // namespace hgbt

#endif  // HGBT_CLI_H_
