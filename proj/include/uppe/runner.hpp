#pragma once

#include <filesystem>
#include <iosfwd>

#include "uppe/checks.hpp"
#include "uppe/config.hpp"

namespace uppe {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  ///< an acceptance-tagged check failed
  kExitConfigError = 2,
  kExitIoError = 3,
};

/// Runs one experiment and writes into `out_dir`:
///   config.effective.toml  the parsed configuration with defaults filled
///   summary.json           results and check reports, deterministic
///   timing.json            wall times
///   *.bin + *.json         fields with sidecars (unless output.fields = false)
///   *.csv                  axis cuts, quadrant energies, report tables
/// Returns an ExitCode; progress lines go to `log`.
int run(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace uppe
