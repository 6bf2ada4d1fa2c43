#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dsw {

/// Runs the `dsw` command line with `args` (program name excluded) and
/// returns the process exit code: 0 success, 1 selftest failure, 2 load or
/// usage error, 3 mathematical refusal, 4 inconsistency found.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dsw
