#pragma once

#include <ostream>

namespace loglab {

/// Entry point of the `loglab` tool. Returns the process exit status: 0 on
/// success, 2 for configuration errors and missing stage inputs, 1 otherwise.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loglab
