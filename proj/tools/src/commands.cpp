#include "adm/cli/commands.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>

#include "adm/cli/output.hpp"
#include "adm/errors.hpp"

namespace adm::cli {

using nlohmann::ordered_json;

namespace {

constexpr const char* kUnits = "hbar = 1; energies in units of V (in units of omega_c_tilde when V = 0); times in 1/energy";

std::filesystem::path prepare(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

std::filesystem::path file(const RunConfig& cfg, const std::filesystem::path& dir, const std::string& stem,
                           const char* ext) {
  return dir / (cfg.output.prefix + "_" + stem + ext);
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("error while writing '" + path.string() + "'");
}

ordered_json metadata(Command c, const RunConfig& cfg) {
  ordered_json j;
  j["command"] = to_string(c);
  j["version"] = version_string();
  j["config"] = cfg.source.string();
  j["timestamp"] = utc_timestamp();
  j["units"] = kUnits;
  return j;
}

void require_section(const RunConfig& cfg, Command c, std::initializer_list<const char*> any_of) {
  for (const char* s : any_of)
    if (cfg.has(s)) return;
  std::string names;
  for (const char* s : any_of) names += std::string(names.empty() ? "" : " or ") + "[" + s + "]";
  throw ConfigError(std::string(to_string(c)) + " needs a " + names + " section");
}

double finite_or_nan(double x) { return std::isfinite(x) ? x : std::numeric_limits<double>::quiet_NaN(); }

ordered_json model_json(const RunConfig& cfg, std::size_t dim) {
  const auto& m = cfg.model;
  return {{"n_sites", m.n_sites},
          {"photon_cutoff", m.photon_cutoff},
          {"dim", dim},
          {"omega_c_tilde", m.params.omega_c_tilde},
          {"omega_a_tilde", m.params.omega_a_tilde},
          {"v_int", m.params.v_int},
          {"omega", m.params.omega},
          {"alpha", m.params.alpha},
          {"boundary", to_string(m.params.boundary)}};
}

ordered_json engineering_json(const EngineeringParams& e) {
  return {{"omega_1", e.omega_1},         {"omega_2", e.omega_2},           {"delta_1", e.delta_1},
          {"delta_2", e.delta_2},         {"drive_amp", e.drive_amp},       {"drive_freq", e.drive_freq},
          {"sideband", e.sideband},       {"omega_c_bare", e.omega_c_bare}, {"omega_a_bare", e.omega_a_bare},
          {"pump_freq", e.pump_freq},     {"n_sites", e.n_sites}};
}

ordered_json protocol_json(const SweepProtocol& p) {
  ordered_json j{{"kind", p.kind == SweepKind::SR ? "sr" : "srs"}};
  if (p.kind == SweepKind::SR) {
    j["omega_final"] = p.omega_final;
  } else {
    j["omega_a_start"] = p.omega_a_start;
    j["omega_a_end"] = p.omega_a_end;
  }
  return j;
}

CompositeBasis model_basis(const RunConfig& cfg) {
  try {
    return CompositeBasis(cfg.model.n_sites, cfg.model.photon_cutoff);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("[model] basis: ") + e.what());
  }
}

ordered_json report_json(const ValidationReport& r) {
  ordered_json j;
  j["kind"] = r.kind;
  j["pass"] = r.pass;
  auto pairs = [](const std::vector<std::pair<std::string, double>>& v) {
    ordered_json o = ordered_json::object();
    for (const auto& [k, x] : v) o[k] = finite_or_nan(x);
    return o;
  };
  j["parameters"] = pairs(r.parameters);
  j["metrics"] = pairs(r.metrics);
  j["thresholds"] = pairs(r.thresholds);
  j["scaling"] = ordered_json::array();
  for (const auto& s : r.scaling)
    j["scaling"].push_back(
        {{"parameter", s.parameter}, {"value", s.value}, {"horizon", s.horizon}, {"deviation", s.deviation}});
  j["notes"] = r.notes;
  return j;
}

std::string verdict_line(const ValidationReport& r) {
  std::string s = r.kind + ": " + (r.pass ? "PASS" : "FAIL");
  for (const auto& [k, x] : r.metrics) s += "\n  " + k + " = " + format_real(x);
  return s;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "couplings") return Command::Couplings;
  if (name == "spectrum") return Command::Spectrum;
  if (name == "sweep") return Command::Sweep;
  if (name == "validate-sw") return Command::ValidateSw;
  if (name == "validate-floquet") return Command::ValidateFloquet;
  return std::nullopt;
}

const char* to_string(Command c) {
  switch (c) {
    case Command::Couplings: return "couplings";
    case Command::Spectrum: return "spectrum";
    case Command::Sweep: return "sweep";
    case Command::ValidateSw: return "validate-sw";
    case Command::ValidateFloquet: return "validate-floquet";
  }
  return "?";
}

CommandOutput cmd_couplings(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  require_section(cfg, Command::Couplings, {"engineering", "couplings"});
  const auto dir = prepare(out_dir);
  const auto& c = cfg.couplings;
  EffectiveCouplings e;
  if (!c.omega_e1 || !c.omega_e2) e = effective_couplings(cfg.engineering);
  if (c.omega_e1) e.rw = *c.omega_e1;
  if (c.omega_e2) e.crw = *c.omega_e2;

  const auto n_rows = static_cast<long>(std::floor((c.ratio_stop - c.ratio_start) / c.ratio_step + 1e-9)) + 1;
  CommandOutput out;
  const auto csv_path = file(cfg, dir, "couplings", ".csv");
  CsvWriter csv(csv_path, {"a_over_ws", "omega_e3", "omega_e4", "ratio_crw_rw", "alpha"});
  double best_ratio = 0.0;
  double best_at = c.ratio_start;
  for (long i = 0; i < n_rows; ++i) {
    const double x = c.ratio_start + static_cast<double>(i) * c.ratio_step;
    auto p = cfg.engineering;
    p.drive_amp = x * p.drive_freq;
    const auto f = floquet_couplings(p, e);
    const double ratio =
        f.rw == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(f.crw) / std::abs(f.rw);
    const auto a = anisotropy(f.rw, f.crw, p.n_sites);
    csv.cell(x).cell(f.rw).cell(f.crw).cell(ratio).cell(a.alpha).end_row();
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_at = x;
    }
  }
  csv.close();
  out.files.push_back(csv_path);

  auto meta = metadata(Command::Couplings, cfg);
  meta["engineering"] = engineering_json(cfg.engineering);
  meta["omega_e1"] = e.rw;
  meta["omega_e2"] = e.crw;
  meta["grid"] = {{"start", c.ratio_start}, {"stop", c.ratio_stop}, {"step", c.ratio_step}, {"rows", n_rows}};
  meta["max_ratio"] = {{"a_over_ws", best_at}, {"ratio_crw_rw", finite_or_nan(best_ratio)}};
  meta["columns"] = {"a_over_ws", "omega_e3", "omega_e4", "ratio_crw_rw", "alpha"};
  const auto json_path = file(cfg, dir, "couplings", ".json");
  write_json(json_path, meta);
  out.files.push_back(json_path);
  out.summary.push_back("couplings: " + std::to_string(n_rows) + " rows; largest CRW/RW ratio " +
                        format_real(best_ratio) + " at A/omega_s = " + format_real(best_at));
  return out;
}

namespace {

ControlGrid spectrum_grid(const RunConfig& cfg) {
  const auto& p = cfg.sweep.protocol;
  const bool sr = p.kind == SweepKind::SR;
  const double start = cfg.grid.start.value_or(sr ? 0.0 : p.omega_a_start);
  const double stop = cfg.grid.stop.value_or(sr ? p.omega_final : p.omega_a_end);
  if (cfg.grid.points > 1 && start == stop) throw ConfigError("[grid] start and stop coincide");
  if (sr && std::min(start, stop) < 0.0) throw ConfigError("[grid] coupling range must be >= 0");
  return ControlGrid::linspace(sr ? Control::Coupling : Control::AtomFrequency, cfg.model.params, start, stop,
                               static_cast<std::size_t>(cfg.grid.points));
}

}  // namespace

CommandOutput cmd_spectrum(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  require_section(cfg, Command::Spectrum, {"model"});
  const auto basis = model_basis(cfg);
  const auto grid = spectrum_grid(cfg);
  validate(grid.at(grid.values.front()));
  const auto dir = prepare(out_dir);
  const auto terms = build_adm_terms(basis, cfg.model.params.boundary);
  const auto flow = spectral_flow(terms, grid, cfg.sweep.levels_k);

  CommandOutput out;
  const auto csv_path = file(cfg, dir, "spectrum", ".csv");
  CsvWriter csv(csv_path, {"control", "level_index", "energy", "parity", "sector_rank"});
  for (std::size_t g = 0; g < grid.values.size(); ++g) {
    for (const auto parity : {Parity::Even, Parity::Odd})
      for (const auto& level : flow.sector(parity)[g])
        csv.cell(grid.values[g]).cell(level.track).cell(level.energy).cell(sign_of(parity)).cell(level.sector_rank)
            .end_row();
  }
  csv.close();
  out.files.push_back(csv_path);

  auto meta = metadata(Command::Spectrum, cfg);
  meta["model"] = model_json(cfg, basis.dim());
  meta["control"] = to_string(grid.control);
  meta["grid"] = {{"start", grid.values.front()}, {"stop", grid.values.back()}, {"points", grid.values.size()}};
  meta["levels_k"] = cfg.sweep.levels_k;
  meta["level_index"] = "overlap-tracked curve id within the parity sector";
  meta["tracking_flags"] = flow.discontinuities.size();
  if (flow.even.front().size() >= 2) {
    auto gap = min_gap(flow, Parity::Even, {0, 1});
    ordered_json gj{{"control", gap.control}, {"gap", gap.gap}, {"refined", false}};
    if (cfg.grid.refine_gap && grid.values.size() > 1) {
      gap = refined_min_gap(terms, flow, Parity::Even, {0, 1});
      gj = {{"control", gap.control}, {"gap", gap.gap}, {"refined", true}};
    }
    gj["crossing"] = is_crossing(gap.gap, spectral_width(terms, grid.at(gap.control)));
    meta["even_min_gap"] = gj;
    out.summary.push_back("spectrum: even-sector minimum gap " + format_real(gap.gap) + " at " +
                          to_string(grid.control) + " = " + format_real(gap.control));
  }
  meta["columns"] = {"control", "level_index", "energy", "parity", "sector_rank"};
  const auto json_path = file(cfg, dir, "spectrum", ".json");
  write_json(json_path, meta);
  out.files.push_back(json_path);
  out.summary.insert(out.summary.begin(), "spectrum: " + std::to_string(grid.values.size()) + " grid points, dim " +
                                              std::to_string(basis.dim()) + ", " +
                                              std::to_string(flow.discontinuities.size()) + " tracking flags");
  return out;
}

CommandOutput cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  require_section(cfg, Command::Sweep, {"sweep"});
  require_section(cfg, Command::Sweep, {"model"});
  const auto basis = model_basis(cfg);
  const auto& base = cfg.model.params;
  auto protocol = cfg.sweep.protocol;
  validate(protocol.params_at(base, 0.0));
  const auto dir = prepare(out_dir);
  const auto terms = build_adm_terms(basis, base.boundary);
  protocol.duration = 1.0;
  const auto initial = ground_state_initial(terms, protocol.params_at(base, 0.0));

  DurationStudy study;
  if (cfg.sweep.duration) {
    study.duration = *cfg.sweep.duration;
  } else {
    study = select_duration(terms, protocol, initial, base, cfg.sweep.duration_initial, cfg.sweep.duration_tolerance,
                            cfg.sweep.duration_max);
  }
  protocol.duration = study.duration;
  const auto run = run_sweep(terms, protocol, initial, base);

  CommandOutput out;
  const auto csv_path = file(cfg, dir, "sweep", ".csv");
  CsvWriter csv(csv_path, {"t", "control", "fidelity", "photon_number", "s_pi", "parity_expect", "norm"});
  for (const auto& r : run.records)
    csv.cell(r.t).cell(r.control).cell(r.fidelity).cell(r.photon_number).cell(r.structure_factor)
        .cell(r.parity_expect).cell(r.norm).end_row();
  csv.close();
  out.files.push_back(csv_path);

  auto meta = metadata(Command::Sweep, cfg);
  meta["model"] = model_json(cfg, basis.dim());
  meta["protocol"] = protocol_json(protocol);
  meta["T"] = study.duration;
  meta["dt"] = run.dt;
  meta["steps"] = run.steps;
  meta["norm_bound"] = run.norm_bound;
  ordered_json trace = ordered_json::array();
  for (const auto& [T, f] : study.trace) trace.push_back({{"T", T}, {"final_fidelity", f}});
  meta["duration_study"] = {{"automatic", !cfg.sweep.duration.has_value()},
                            {"converged", study.converged},
                            {"initial", cfg.sweep.duration_initial},
                            {"tolerance", cfg.sweep.duration_tolerance},
                            {"max", cfg.sweep.duration_max},
                            {"trace", trace}};
  meta["diagnostics"] = {{"max_norm_drift", run.max_norm_drift},
                         {"max_parity_drift", run.max_parity_drift},
                         {"max_fock_tail", run.max_fock_tail}};
  meta["warnings"] = run.warnings;
  meta["columns"] = {"t", "control", "fidelity", "photon_number", "s_pi", "parity_expect", "norm"};
  const auto json_path = file(cfg, dir, "sweep", ".json");
  write_json(json_path, meta);
  out.files.push_back(json_path);

  const auto& last = run.records.back();
  out.summary.push_back("sweep: T = " + format_real(study.duration) + ", dt = " + format_real(run.dt) + ", " +
                        std::to_string(run.steps) + " steps");
  out.summary.push_back("sweep: final fidelity " + format_real(last.fidelity) + ", photon number " +
                        format_real(last.photon_number) + ", S(pi)/N " + format_real(last.structure_factor));
  for (const auto& w : run.warnings) out.summary.push_back("warning: " + w);
  if (!cfg.sweep.duration && !study.converged)
    out.summary.push_back("warning: duration study did not converge below duration_max");
  return out;
}

CommandOutput cmd_validate_sw(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  require_section(cfg, Command::ValidateSw, {"engineering"});
  SwOptions opt;
  if (cfg.validate.photon_cutoff) opt.photon_cutoff = *cfg.validate.photon_cutoff;
  opt.scaling = cfg.validate.scaling;
  opt.v_int = cfg.validate.v_int.value_or(0.0);
  const auto e = effective_couplings(cfg.engineering);
  if (e.rw == 0.0 && !cfg.validate.horizon) throw ConfigError("[validate] horizon required when Omega_e1 = 0");
  const double horizon = cfg.validate.horizon.value_or(10.0 / std::abs(e.rw));
  const auto dir = prepare(out_dir);
  const auto report = validate_sw(cfg.engineering, horizon, opt);

  auto j = metadata(Command::ValidateSw, cfg);
  j["engineering"] = engineering_json(cfg.engineering);
  j["horizon"] = horizon;
  j["report"] = report_json(report);
  const auto path = file(cfg, dir, "validate_sw", ".json");
  write_json(path, j);
  return {{path}, {verdict_line(report)}};
}

CommandOutput cmd_validate_floquet(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  require_section(cfg, Command::ValidateFloquet, {"engineering"});
  FloquetOptions opt;
  if (cfg.validate.photon_cutoff) opt.photon_cutoff = *cfg.validate.photon_cutoff;
  opt.steps_per_period = cfg.validate.steps_per_period;
  opt.scaling = cfg.validate.scaling;
  const double v_int = cfg.validate.v_int.value_or(1.0);
  const auto dir = prepare(out_dir);
  const auto report = validate_floquet(cfg.engineering, v_int, cfg.validate.periods, opt);

  auto j = metadata(Command::ValidateFloquet, cfg);
  j["engineering"] = engineering_json(cfg.engineering);
  j["v_int"] = v_int;
  j["periods"] = cfg.validate.periods;
  j["report"] = report_json(report);
  const auto path = file(cfg, dir, "validate_floquet", ".json");
  write_json(path, j);
  return {{path}, {verdict_line(report)}};
}

CommandOutput run_command(Command command, const RunConfig& config, const std::filesystem::path& out_dir) {
  switch (command) {
    case Command::Couplings: return cmd_couplings(config, out_dir);
    case Command::Spectrum: return cmd_spectrum(config, out_dir);
    case Command::Sweep: return cmd_sweep(config, out_dir);
    case Command::ValidateSw: return cmd_validate_sw(config, out_dir);
    case Command::ValidateFloquet: return cmd_validate_floquet(config, out_dir);
  }
  throw ConfigError("unknown command");
}

}  // namespace adm::cli
