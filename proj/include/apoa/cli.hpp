#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apoa {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitCapacity = 4;

/// The `apoa` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apoa
