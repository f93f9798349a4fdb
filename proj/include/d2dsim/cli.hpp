#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace d2dsim {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

/// CSV header for per-run rows (run and sweep).
extern const char* const kRunCsvHeader;

/// Fixed 9-significant-digit rendering used for every float the CLI prints.
std::string format_sig9(double value);

/// Full command-line entry point (gen / run / sweep / compare). Streams are
/// injectable so tests can capture byte-exact output.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace d2dsim
