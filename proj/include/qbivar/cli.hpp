#pragma once

#include <iosfwd>

namespace qbd {

enum ExitCode : int { exit_ok = 0, exit_data = 2, exit_numeric = 3, exit_usage = 64 };

/// Entry point of the `qbivar` tool. Reports go to `out` (or to files under
/// the `--out` stem), diagnostics and usage text to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qbd
