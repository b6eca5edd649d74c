#pragma once

#include <filesystem>
#include <iosfwd>

#include "tvw/app/run_config.hpp"
#include "tvw/splitting.hpp"

namespace tvw::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitBadConfig = 2,
  kExitIo = 3,
  kExitNotConverged = 4,
};

void write_history_csv(const std::filesystem::path& path, const RunHistory& history);

/// Each command writes report.json (resolved configuration and results),
/// timing.json (wall-clock data only), CSV and PGM outputs into cfg.out.
/// Returns the process exit code; configuration and I/O errors propagate as
/// ConfigError / IoError / PgmError.
int cmd_denoise(const RunConfig& cfg, std::ostream& log);
int cmd_balls(const RunConfig& cfg, std::ostream& log);
int cmd_dither(const RunConfig& cfg, std::ostream& log);

/// Full command-line entry point: parses flags and the optional config file
/// (flags win), dispatches, and maps exceptions to exit codes.
int run_cli(int argc, char** argv);

}  // namespace tvw::app
