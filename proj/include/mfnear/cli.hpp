#pragma once

// The mfnear command line.
//
// Subcommands: formulas, table, near, verify, sample. Truth tables are read
// and written as lowercase hex, most significant digit first, 2^m / 4 digits
// (one digit for m < 2); bit int(x) + 2^n int(y) of the table is f(x, y).
// A function may instead be given as --pi '[...]' (pi(y) at index int(y))
// and --phi '0110...' (character int(y) is phi(y)).
//
// Exit codes: 0 success, 1 a verification failed, 2 usage error.
// Relative --out paths and the default table file go to $MFNEAR_OUTPUT_DIR.

#include <iosfwd>

namespace mfnear::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mfnear::cli
