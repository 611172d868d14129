#pragma once

#include <iosfwd>

namespace codeplay::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitBackend = 3;

/// Entry point of the `codeplay` tool with subcommands train, eval, metrics,
/// trace-dump and rollout. Writes to `out`/`err` instead of the process streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace codeplay::cli
