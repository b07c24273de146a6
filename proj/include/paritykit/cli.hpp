#pragma once

#include <ostream>

namespace paritykit::cli {

enum ExitCode : int { kOk = 0, kViolated = 1, kUsage = 2, kLimit = 3 };

// Entry point shared by the paritykit binary and the tests. Reports go to out, diagnostics
// to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace paritykit::cli
