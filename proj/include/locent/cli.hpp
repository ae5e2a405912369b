#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace locent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUsage = 4;

/// Seed used by `sweep --auto-maxdiff` when --seed is not given.
inline constexpr unsigned long long kDefaultMaxDiffSeed = 20240607ULL;

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace locent::cli
