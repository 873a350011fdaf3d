#pragma once

#include <iosfwd>

namespace pcasim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericError = 3;

/// Entry point shared by the binary and the tests. Results go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pcasim::cli
