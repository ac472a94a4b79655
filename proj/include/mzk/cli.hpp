#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mzk {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2, kExitIo = 3 };

// A parsed command line. Parameter values are stored as validated strings
// keyed by long option name; lists are comma-joined.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 0;
};

const std::vector<std::string>& subcommand_names();

// `args` excludes the program name. Flags override values from --config
// (key = value lines, one [subcommand] section per subcommand). Throws
// ConfigError on unknown flags or keys, malformed values and range
// violations. Returns nullopt after printing help to `out`.
std::optional<RunConfig> parse_config(const std::vector<std::string>& args, std::ostream& out);

// Runs the subcommand; errors propagate as ConfigError, BlowUpError,
// DomainError or IoError.
void execute(const RunConfig& cfg, std::ostream& out);

// parse_config + execute with errors mapped to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mzk
