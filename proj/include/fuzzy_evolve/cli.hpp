#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzy_evolve {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitIoError = 3;

/// Entry point of `fuzzy-evolve`. `args` excludes the program name. Reports
/// go to `out` (or the --out file); diagnostics and the rounded summary go to
/// `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzy_evolve
