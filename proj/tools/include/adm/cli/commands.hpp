#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adm/cli/config.hpp"

namespace adm::cli {

enum class Command { Couplings, Spectrum, Sweep, ValidateSw, ValidateFloquet };

std::optional<Command> parse_command(const std::string& name);
const char* to_string(Command c);

struct CommandOutput {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> summary;  // human-readable lines for stdout
};

/// Runs one command and writes its files below `out_dir`.
/// Throws ConfigError for unusable configurations, NumericError for numeric failures.
CommandOutput run_command(Command command, const RunConfig& config, const std::filesystem::path& out_dir);

CommandOutput cmd_couplings(const RunConfig& config, const std::filesystem::path& out_dir);
CommandOutput cmd_spectrum(const RunConfig& config, const std::filesystem::path& out_dir);
CommandOutput cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir);
CommandOutput cmd_validate_sw(const RunConfig& config, const std::filesystem::path& out_dir);
CommandOutput cmd_validate_floquet(const RunConfig& config, const std::filesystem::path& out_dir);

/// Exit-code contract of the adm executable.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Full command-line entry point; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace adm::cli
