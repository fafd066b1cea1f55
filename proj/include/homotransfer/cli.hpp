#pragma once

#include <iosfwd>

namespace homotransfer {

// Entry point of the command-line tool. The report goes to `out`, diagnostics
// to `err`; the return value is the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homotransfer
