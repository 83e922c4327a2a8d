// Command-line front end: one subcommand per registered scenario.
#include "mpw/common.hpp"
#include "mpw/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical companion to the mathematical physics notes"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string out = "-";
  std::string timing = "on";
  app.add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", out, "output path, '-' for standard output")->capture_default_str();
  app.add_option("--timing", timing, "on or off; off reports runtime_ms as 0")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();

  struct Bound {
    CLI::App* cmd;
    std::map<std::string, std::string> values;
    std::string seed;
  };
  std::map<std::string, Bound> commands;
  // Global flags may follow the scenario name; subcommands inherit this setting.
  app.fallthrough();
  for (const auto& spec : mpw::cli::registered_scenarios()) {
    Bound& b = commands[spec.name];
    b.cmd = app.add_subcommand(spec.name, spec.summary);
    // Scenario flags may be single letters such as --h, so help is long-form only.
    b.cmd->set_help_flag("--help", "Print this help message and exit");
    for (const auto& flag : spec.flags) {
      b.cmd->add_option("--" + flag.key, b.values[flag.key], flag.help)->default_str(flag.default_value);
    }
    b.cmd->add_option("--seed", b.seed, spec.randomized ? "RNG seed (required)" : "RNG seed (unused)");
  }

  if (argc > 1 && argv[1][0] != '-' && mpw::cli::find_scenario(argv[1]) == nullptr) {
    std::string list;
    for (const auto& spec : mpw::cli::registered_scenarios()) list += " " + spec.name;
    std::cerr << "error: unknown scenario '" << argv[1] << "'; registered:" << list << "\n";
    return kExitUsage;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  for (auto& [name, b] : commands) {
    if (!b.cmd->parsed()) continue;
    std::map<std::string, std::string> flags;
    for (const auto& [key, value] : b.values) {
      if (b.cmd->count("--" + key) > 0) flags[key] = value;
    }
    if (b.cmd->count("--seed") > 0) flags["seed"] = b.seed;
    try {
      auto result = mpw::cli::run_scenario(name, flags);
      if (timing == "off") result.runtime_ms = 0;
      mpw::cli::emit(result, format == "csv" ? mpw::cli::Format::csv : mpw::cli::Format::json, out);
      return result.pass.value_or(true) ? kExitOk : kExitFailed;
    } catch (const mpw::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      if (e.kind() == mpw::ErrorKind::usage || e.kind() == mpw::ErrorKind::parse) return kExitUsage;
      return kExitFailed;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitFailed;
    }
  }
  return kExitUsage;
}
