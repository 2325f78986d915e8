#pragma once

#include <iosfwd>

namespace capital::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

/// Environment variable supplying the default worker count for `sweep`.
inline constexpr const char* kParallelismEnv = "CAPITAL_PARALLELISM";

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace capital::cli
