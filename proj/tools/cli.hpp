#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sapkit {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDegenerate = 2;
inline constexpr int kMismatch = 3;

// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace sapkit
