/*
 *   Copyright 2026 The dmnn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <iosfwd>

namespace dmnn {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
	exit_ok = 0,
	exit_usage = 1,  // bad flags or configuration
	exit_data = 2,   // missing or malformed data files, invalid graphs
	exit_budget = 3, // window cap exceeded
};

/// Entry point of the `dmnn` tool; subcommands synth, train, apply, eval,
/// basis, trace and validate. Returns the exit code.
int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, char const* const* argv);

} // namespace dmnn
