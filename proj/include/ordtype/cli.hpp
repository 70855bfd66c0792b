#pragma once

#include <iosfwd>

namespace ordtype::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;     // parse, validation or usage error
inline constexpr int kUnsupported = 3;    // Unsupported or Stuck
inline constexpr int kInternal = 4;       // internal invariant violation

// Runs one command line; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ordtype::cli
