#pragma once

#include <ostream>

namespace hcdeval::cli {

/// Exit codes: 0 success (and --help), 1 input validation or processing
/// errors, 2 usage errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hcdeval::cli
