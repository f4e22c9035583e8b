#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace clawdeg::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitAssertionFailed = 1,
  kExitUsage = 2,
  kExitBudget = 3,
};

struct ParamSpec {
  std::string key;
  std::string default_value; // empty means "no default"
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;
};

const std::vector<CommandSpec>& commands();
const CommandSpec* find_command(std::string_view name);

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> parameters;
};

// "key = value" lines; '#' starts a comment line. Throws ParseError with the
// 1-based line and column of the problem. With a command, keys it does not
// take are rejected as well.
std::map<std::string, std::string> parse_config_text(std::string_view text, const CommandSpec* command = nullptr);
std::map<std::string, std::string> load_config_file(const std::string& path, const CommandSpec* command = nullptr);

// Config-file values with flag values laid over them.
RunConfig merge_config(std::string command, const std::map<std::string, std::string>& file_values,
                       const std::map<std::string, std::string>& flag_values);

// Runs one subcommand. The report goes to the `output` path when set and to
// `out` otherwise; diagnostics go to `err`. Returns one of ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace clawdeg::cli
