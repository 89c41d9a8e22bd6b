// Command-line front end: check, pair, witness, random, verify.
//
// Exit codes: 0 IN / found / pass, 1 OUT / none / fail, 2 UNDECIDED,
// 64 parse or usage error, 65 invalid input (dimension mismatch,
// non-Hermitian Choi matrix, invalid state), 66 unknown cone or theorem,
// 70 internal error.

#ifndef CONEMAPS_CLI_HPP
#define CONEMAPS_CLI_HPP

#include <iosfwd>

namespace conemaps {

inline constexpr int kExitIn = 0;
inline constexpr int kExitOut = 1;
inline constexpr int kExitUndecided = 2;
inline constexpr int kExitParse = 64;
inline constexpr int kExitDimension = 65;
inline constexpr int kExitUnknownName = 66;
inline constexpr int kExitInternal = 70;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conemaps

#endif  // CONEMAPS_CLI_HPP
