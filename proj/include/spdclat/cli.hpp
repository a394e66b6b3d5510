#pragma once

#include <string>
#include <vector>

namespace spdclat::cli {

// Runs the CLI on pre-tokenized arguments (no program name) and returns the
// process exit code: 0 success, 1 configuration error, 2 numerical or module
// error.
int run(const std::vector<std::string>& args);

} // namespace spdclat::cli
