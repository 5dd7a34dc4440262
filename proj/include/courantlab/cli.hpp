#pragma once

// Command-line front end. Every command builds one structured report, printed
// as indented text or, with --json, as JSON with sorted keys. The report holds
// no timings, so identical inputs give byte-identical output.
//
// Exit codes: 0 when every check passes, 1 on a mathematical failure (the
// report carries a witness), 2 on an input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace clab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitMathFailure = 1;
inline constexpr int kExitInputError = 2;

/// `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clab
