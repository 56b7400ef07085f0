#pragma once

#include <ostream>

namespace expsel::cli {

/// Full command-line entry point. Reports go to `out` (or the --out file),
/// diagnostics to `err`. Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace expsel::cli
