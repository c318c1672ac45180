#pragma once

#include <iosfwd>

#include "fockloss/cli/config.hpp"

namespace fockloss::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_phasespace(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_conjecture(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Parses argv, dispatches, and maps errors to exit codes. CSV goes to
/// `--out` or to `out`; the summary line goes to `log`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace fockloss::cli
