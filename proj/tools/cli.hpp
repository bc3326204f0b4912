#pragma once

#include <iosfwd>

namespace vecsect {

/// Runs the vecsect command line. Returns the process exit code:
/// 0 success, 1 validation or usage error, 2 internal failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vecsect
