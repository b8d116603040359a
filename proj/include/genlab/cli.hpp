#pragma once

#include <string>
#include <vector>

namespace genlab {

// Runs the command line given argv-style arguments (excluding the program
// name). Returns the process exit code: 0 success, 1 inequality violation,
// 2 parse/usage error, 3 solver failure, 4 enumeration cap exceeded.
int run_cli(const std::vector<std::string>& args);

}  // namespace genlab
