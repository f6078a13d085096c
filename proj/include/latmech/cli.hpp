#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latmech::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Run one command line (without the program name). Data goes to `out` or to
/// the files named by --out, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version();

}  // namespace latmech::cli
