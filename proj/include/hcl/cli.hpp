#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // congruence fails or verdict inconclusive
inline constexpr int kExitUsage = 2;     // bad arguments or I/O

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcl::cli
