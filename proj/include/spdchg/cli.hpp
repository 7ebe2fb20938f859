#pragma once

#include <string>
#include <vector>

namespace spdchg {

// Runs the command-line interface. argv includes the program name at
// position 0. Returns the process exit code: 0 on success, 2 on usage or
// parameter-validation errors, 3 on numeric failures.
int run_command(std::vector<std::string> argv);

}  // namespace spdchg
