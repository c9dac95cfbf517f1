#ifndef OPPENHEIM_CLI_COMMANDS_HPP
#define OPPENHEIM_CLI_COMMANDS_HPP

// Subcommands. Each writes one CSV of raw rows plus summary.json into
// cfg.out and returns an exit code; errors surface as ConfigError/IoError.

#include <iosfwd>
#include <string>
#include <vector>

#include "oppenheim/cli/config.hpp"

namespace oppenheim::cli {

struct CommandInfo {
  std::string name;
  std::string csv;      // file name of the CSV written
  std::string summary;  // one line for --help
  std::string columns;  // CSV header, documented in --help
};

const std::vector<CommandInfo>& command_table();
const CommandInfo& command_info(const std::string& name);

int cmd_oppenheim_scan(const RunConfig& cfg, std::ostream& log);
int cmd_oppenheim_one(const RunConfig& cfg, std::ostream& log);
int cmd_targets_hit(const RunConfig& cfg, std::ostream& log);
int cmd_critical_exponent(const RunConfig& cfg, std::ostream& log);
int cmd_loglaw(const RunConfig& cfg, bool point, std::ostream& log);
int cmd_met_decay(const RunConfig& cfg, std::ostream& log);
int cmd_measure(const RunConfig& cfg, std::ostream& log);
int cmd_sample(const RunConfig& cfg, std::ostream& log);
int cmd_selftest(const RunConfig& cfg, std::ostream& log);

/// Dispatches by name, maps ConfigError/IoError to exit codes 2/3 and
/// prints their messages to `err`.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& log,
                std::ostream& err);

/// Full command-line entry point (used by the executable and the tests).
int cli_main(int argc, char** argv, std::ostream& log, std::ostream& err);

std::string version();

}  // namespace oppenheim::cli

#endif  // OPPENHEIM_CLI_COMMANDS_HPP
