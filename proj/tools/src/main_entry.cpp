#include <CLI11.hpp>

#include <iostream>

#include "adm/cli/commands.hpp"
#include "adm/cli/output.hpp"
#include "adm/errors.hpp"

namespace adm::cli {

int main_entry(int argc, char** argv) {
  CLI::App app{"Anisotropic Dicke model with Rydberg interactions: couplings, spectra, sweeps, reduction checks"};
  app.set_version_flag("--version", version_string());
  std::string command;
  std::string config_path;
  std::string out_dir;
  app.add_option("command", command, "couplings | spectrum | sweep | validate-sw | validate-floquet")->required();
  app.add_option("--config", config_path, "INI configuration file")->required();
  app.add_option("--out", out_dir, "output directory (overrides [output] directory)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const auto which = parse_command(command);
  if (!which) {
    std::cerr << "adm: unknown command '" << command << "'\n";
    return kExitConfig;
  }
  try {
    const auto cfg = load_config(config_path);
    const auto dir = out_dir.empty() ? cfg.output.directory : std::filesystem::path(out_dir);
    const auto result = run_command(*which, cfg, dir);
    for (const auto& line : result.summary) std::cout << line << '\n';
    for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "adm: config error: " << config_path << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "adm: invalid parameters: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "adm: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "adm: failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace adm::cli
