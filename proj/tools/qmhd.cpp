// Command-line driver: run, convergence and audit subcommands.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmhd/runner.hpp"

namespace {

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v <= 0)
      throw qmhd::ConfigError("--levels expects positive integers, got '" + item + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized magnetic gas dynamics solver and entropy audit"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "Run a scenario from a config file");
  run->add_option("config", config_path, "Run configuration")->required();
  run->add_option("--override", overrides, "section.key=value overrides");

  std::string levels_text = "32,64,128";
  auto* conv = app.add_subcommand("convergence", "Refinement study on the manufactured scenario");
  conv->add_option("config", config_path, "Run configuration")->required();
  conv->add_option("--levels", levels_text, "Comma-separated cells per axis");
  conv->add_option("--override", overrides, "section.key=value overrides");

  std::string snapshot_path;
  std::string audit_config;
  auto* audit = app.add_subcommand("audit", "Recompute auxiliary terms and entropy audit on a snapshot");
  audit->add_option("snapshot", snapshot_path, "Snapshot CSV")->required();
  audit->add_option("--config", audit_config, "Run configuration (default: config.ini beside the snapshot)");
  audit->add_option("--override", overrides, "section.key=value overrides");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : qmhd::exit_code::config;
  }

  try {
    if (*run) {
      const auto cfg = qmhd::load_run_config(config_path, overrides);
      const auto summary = qmhd::run(cfg, std::cout);
      return summary.status;
    }
    if (*conv) {
      const auto cfg = qmhd::load_run_config(config_path, overrides);
      const auto result = qmhd::convergence(cfg, parse_levels(levels_text), std::cout);
      return result.identities.all_pass() && result.balances.all_pass() ? 0 : 1;
    }
    if (*audit) {
      if (audit_config.empty())
        audit_config = (std::filesystem::path(snapshot_path).parent_path() / "config.ini").string();
      const auto cfg = qmhd::load_run_config(audit_config, overrides);
      const auto row = qmhd::audit_snapshot(snapshot_path, cfg);
      std::cout << qmhd::audit_header() << '\n' << qmhd::format_audit_row(row) << '\n';
      return 0;
    }
  } catch (const qmhd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return qmhd::exit_code::config;
  } catch (const qmhd::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return qmhd::exit_code::io;
  } catch (const qmhd::NonPhysicalStateError& e) {
    std::cerr << "non-physical state: " << e.what() << '\n';
    return qmhd::exit_code::physical;
  } catch (const qmhd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qmhd::exit_code::config;
  }
  return 0;
}
