#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mfl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Runs the mflscore command line. `args` excludes the program name.
/// Documents go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfl::cli
