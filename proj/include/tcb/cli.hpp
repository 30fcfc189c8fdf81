#pragma once

#include <string>
#include <vector>

namespace tcb::cli {

/// Full command-line driver; args excludes the program name.
/// Returns the process exit code: 0 success, 2 usage / parse problems,
/// 3 domain errors, 4 verification failures.
int run_cli(const std::vector<std::string>& args);

} // namespace tcb::cli
