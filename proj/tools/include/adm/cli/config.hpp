#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adm/couplings.hpp"
#include "adm/dynamics.hpp"
#include "adm/hamiltonian.hpp"
#include "adm/observables.hpp"
#include "adm/spectra.hpp"
#include "adm/validate.hpp"

namespace adm::cli {

/// Bad or missing configuration; `line` is 0 when no source line applies.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

struct ModelSection {
  int n_sites = 6;
  int photon_cutoff = 40;
  ModelParams params{1.0, 1.0, 1.0, 0.0, 0.7, Boundary::Periodic};
};

struct SweepSection {
  SweepProtocol protocol;
  std::optional<double> duration;  // empty: automatic doubling study
  double duration_initial = 10.0;
  double duration_tolerance = 0.005;
  double duration_max = 5120.0;
  int levels_k = 6;
};

struct GridSection {
  int points = 151;
  std::optional<double> start;
  std::optional<double> stop;
  bool refine_gap = false;
};

struct CouplingsSection {
  std::optional<double> omega_e1;
  std::optional<double> omega_e2;
  double ratio_start = 0.0;
  double ratio_stop = 5.0;
  double ratio_step = 0.01;
};

struct ValidateSection {
  std::optional<double> horizon;  // validate-sw; default 10 / |Omega_e1|
  int periods = 50;               // validate-floquet
  std::optional<double> v_int;    // validate-sw default 0, validate-floquet default 1
  std::optional<int> photon_cutoff;
  int steps_per_period = 1000;
  bool scaling = true;
};

struct OutputSection {
  std::filesystem::path directory = ".";
  std::string prefix = "adm";
};

struct RunConfig {
  std::filesystem::path source;
  ModelSection model;
  SweepSection sweep;
  GridSection grid;
  EngineeringParams engineering;
  CouplingsSection couplings;
  ValidateSection validate;
  OutputSection output;
  std::vector<std::string> sections;  // section names present in the file
  bool has(const std::string& section) const;
};

/// Parses the INI grammar documented in the README. Unknown sections or keys,
/// malformed numbers and out-of-range values raise ConfigError with the line.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::filesystem::path& source = "<string>");

}  // namespace adm::cli
