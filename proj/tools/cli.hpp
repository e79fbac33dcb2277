#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace girg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitCapacity = 4;

/// Entry point of the `girg` tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace girg::cli
