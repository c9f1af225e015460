#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rfsum::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  // failed property checks, I/O and resource errors
inline constexpr int kUsage = 2;        // bad flags or violated preconditions

// Environment variable naming the default sieve cache directory.
inline constexpr const char* kCacheDirEnv = "RFSUM_CACHE_DIR";

// Runs one command line (args[0] is the program name). CSV goes to `out`
// unless --csv is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rfsum::cli
