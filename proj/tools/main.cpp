// chiral-casimir <command> --config PATH [--format json|csv] [--out PATH]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "chiral_casimir/cli.hpp"

namespace cc = chiral_casimir::cli;

int main(int argc, char** argv) {
  CLI::App app{"Casimir momentum of a chiral oscillator in a magnetic field"};
  std::string command;
  std::string config_path;
  std::string format;
  std::string out_path;
  app.add_option("command", command, "derive | ground-state | casimir | response | estimate | sweep | verify")
      ->required();
  app.add_option("--config", config_path, "JSON run document")->required();
  app.add_option("--format", format, "json or csv (overrides output_format)");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto cmd = cc::parse_command(command);
    if (!cmd) {
      throw cc::ConfigError("unknown command '" + command + "'");
    }
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      throw cc::ConfigError("cannot read config file '" + config_path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    const std::string base = std::filesystem::path(config_path).parent_path().string();
    cc::RunConfig config = cc::parse_config(text.str(), cmd, base.empty() ? "." : base);
    if (!format.empty()) {
      const auto f = cc::parse_format(format);
      if (!f) {
        throw cc::ConfigError("--format must be json or csv");
      }
      config.output_format = *f;
    }
    if (out_path.empty()) {
      return cc::run(config, std::cout, std::cerr);
    }
    std::ostringstream buffer;
    const int code = cc::run(config, buffer, std::cerr);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << buffer.str();
    if (!out) {
      std::cerr << "chiral-casimir: cannot write '" << out_path << "'\n";
      return 1;
    }
    return code;
  } catch (const cc::ConfigError& e) {
    std::cerr << "chiral-casimir: config error: " << e.what() << "\n";
    return 2;
  }
}
