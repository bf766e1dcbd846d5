#pragma once

// Command-line front end. Lives in the library so the dispatch and exit-code
// contract can be exercised in-process.
//
// Exit codes: 0 success, 1 corpus failure, 2 usage/parse/IO error,
// 3 verification failure, 4 invalid weight, 5 mixed consensus or criterion
// mismatch.

#include <ostream>
#include <string>
#include <vector>

#include "wpinv/errors.hpp"

namespace wpinv {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCorpusFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitInvalidWeight = 4;
inline constexpr int kExitAlarm = 5;

int exit_code_for(ErrorKind kind);

/// args excludes the program name. The run report goes to --out when given,
/// otherwise to out; diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wpinv
