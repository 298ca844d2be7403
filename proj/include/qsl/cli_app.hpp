#ifndef QSL_CLI_APP_HPP
#define QSL_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qsl {

/// Exit codes shared by every subcommand.
enum ExitCode {
    exit_ok = 0,         // everything checked holds
    exit_violated = 1,   // some axiom/formula violated; report has witnesses
    exit_bad_input = 2,  // file, parse or validation error
    exit_resource = 3,   // a configured bound was exceeded
};

/// Runs the command line given as plain arguments (no program name).
/// Reports go to `out`, diagnostics to `err`; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace qsl

#endif
