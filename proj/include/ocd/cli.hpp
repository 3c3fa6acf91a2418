#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ocd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `ocd` tool. `args` excludes the program name. Covers go
/// to `out` unless --output is given; diagnostics always go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ocd
