#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ifbc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumeric = 4;

inline constexpr const char* kVersion = "0.1.0";

/// Entry point of the `ifbc` tool. `args` excludes the program name.
/// Never throws; returns one of the kExit* codes.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ifbc::cli
