#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace majorana::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args[0] is the program name). Files are written
/// atomically; results without an --out path go to `out`, diagnostics to
/// `err`. Returns 0 on success, 1 on a domain error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace majorana::cli
