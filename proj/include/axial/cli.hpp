#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace axial {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCapExceeded = 3;
inline constexpr int kExitUnknown = 4;

inline constexpr int kSchemaVersion = 1;

/// Runs one `axial` command. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace axial
