#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "clawdeg/errors.hpp"
#include "clawdeg_cli/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = clawdeg::cli;

  CLI::App app{"Exact approximate-degree computations for claw-type properties"};
  app.set_version_flag("--version", std::string(CLAWDEG_VERSION));
  app.require_subcommand(1);

  std::map<std::string, std::map<std::string, std::string>> flag_storage;
  std::map<std::string, std::string> config_paths;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  for (const cli::CommandSpec& cmd : cli::commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", config_paths[cmd.name], "file of 'key = value' lines; flags take precedence");
    for (const cli::ParamSpec& p : cmd.params) {
      std::string help = p.help;
      if (!p.default_value.empty()) {
        help += " [" + p.default_value + "]";
      }
      options[cmd.name][p.key] = sub->add_option("--" + p.key, flag_storage[cmd.name][p.key], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  for (const cli::CommandSpec& cmd : cli::commands()) {
    if (!app.got_subcommand(cmd.name)) {
      continue;
    }
    std::map<std::string, std::string> file_values;
    const std::string& path = config_paths[cmd.name];
    if (!path.empty()) {
      try {
        file_values = cli::load_config_file(path, &cmd);
      } catch (const clawdeg::ParseError& e) {
        std::cerr << "error: " << path << ":" << e.line() << ":" << e.column() << ": " << e.what() << '\n';
        return cli::kExitUsage;
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitUsage;
      }
    }
    std::map<std::string, std::string> flag_values;
    for (const auto& [key, opt] : options[cmd.name]) {
      if (opt->count() > 0) {
        flag_values[key] = flag_storage[cmd.name][key];
      }
    }
    return cli::run(cli::merge_config(cmd.name, file_values, flag_values), std::cout, std::cerr);
  }
  return cli::kExitUsage;
}
