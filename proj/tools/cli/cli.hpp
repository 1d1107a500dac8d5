#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace extint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

/// Runs the tool on argv (without the program name). The JSON report goes to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace extint::cli
