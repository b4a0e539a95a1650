#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scpna::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitPipelineError = 3;

/// Runs the scpna command line. args[0] is the program name. Returns the
/// process exit code: 0 success, 2 input error, 3 pipeline/numerical error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scpna::cli
