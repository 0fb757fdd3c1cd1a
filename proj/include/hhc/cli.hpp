#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hhc::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFlagged = 1;
inline constexpr int kExitError = 2;

// args excludes the program name. The report goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hhc::cli
