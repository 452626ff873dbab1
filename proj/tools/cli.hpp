#ifndef RSFILTER_TOOLS_CLI_HPP
#define RSFILTER_TOOLS_CLI_HPP

#include <ostream>

namespace rsfilter::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_validation = 2,
    exit_numeric = 3,
    exit_io = 4,
};

/// Runs the command line; tables and reports go to `out` (unless --out names a file),
/// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace rsfilter::cli

#endif // RSFILTER_TOOLS_CLI_HPP
