#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace canon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitResource = 2;

/// Environment variable naming the default flexibility cache file.
inline constexpr const char* kCacheEnv = "CANON_CACHE";

/// Runs one command line (args excludes the program name). Results go to
/// `out`, diagnostics to `err`; `in` feeds `diff`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace canon::cli
