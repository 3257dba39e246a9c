#pragma once

// The `hartogs` command line: index, interval, witness, kernel, verify and
// diagram subcommands. Output is a JSON envelope
//
//   {"tool", "version", "command", "config_digest", "config", "payload", "timing"}
//
// or CSV with --format csv. Exit codes: 0 ok, 1 verification failure,
// 2 usage error, 3 domain membership error.

#include <ostream>
#include <string>
#include <vector>

namespace hartogs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hartogs
