#ifndef CDGA_TOOLS_CLI_HPP
#define CDGA_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cdga::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_nonformal = 2;
inline constexpr int exit_inconclusive = 3;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdga::cli

#endif  // CDGA_TOOLS_CLI_HPP
