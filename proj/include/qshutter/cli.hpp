// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>

namespace qshutter {

/// Entry point behind tools/main.cpp, exposed so the command layer can be
/// exercised in-process by the tests. Returns the process exit code:
/// 0 success, 1 verification failure, 2 config error, 3 numeric error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qshutter
