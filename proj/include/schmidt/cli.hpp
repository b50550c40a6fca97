#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schmidt::cli {

/// Process exit codes.
enum ExitCode : int {
    ok = 0,
    input_error = 2,
    mode_mismatch = 3,
    not_a_state = 4,
};

/// Runs one command line (args excludes the program name).  Documents go to
/// `out` (or --output), diagnostics to `err`; `in` backs --input -.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace schmidt::cli
