#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

/// `polyproj generate|run|bench|trace2d ...`. `args` excludes the program
/// name. Returns the process exit code.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyproj::cli
