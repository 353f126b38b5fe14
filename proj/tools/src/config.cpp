#include "adm/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace adm::cli {

ConfigError::ConfigError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

bool RunConfig::has(const std::string& section) const {
  return std::find(sections.begin(), sections.end(), section) != sections.end();
}

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Line numbers of sections and keys, for diagnostics after the tree is built.
class LineIndex {
 public:
  explicit LineIndex(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    for (int n = 1; std::getline(in, line); ++n) {
      const auto t = trim(line);
      if (t.empty() || t[0] == ';' || t[0] == '#') continue;
      if (t.front() == '[' && t.back() == ']') {
        section = trim(t.substr(1, t.size() - 2));
        sections_.emplace(section, n);
      } else if (const auto eq = t.find('='); eq != std::string::npos) {
        keys_.emplace(section + "." + trim(t.substr(0, eq)), n);
      }
    }
  }

  int section(const std::string& name) const { return find(sections_, name); }
  int key(const std::string& path) const { return find(keys_, path); }

 private:
  static int find(const std::map<std::string, int>& m, const std::string& k) {
    const auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  }
  std::map<std::string, int> sections_;
  std::map<std::string, int> keys_;
};

const std::map<std::string, std::set<std::string>>& grammar() {
  static const std::map<std::string, std::set<std::string>> g{
      {"model",
       {"n_sites", "photon_cutoff", "omega_c_tilde", "omega_a_tilde", "v_int", "omega", "alpha", "boundary"}},
      {"sweep",
       {"kind", "duration", "dt", "omega_final", "omega_a_start", "omega_a_end", "sample_stride", "sample_count",
        "levels_k", "duration_initial", "duration_tolerance", "duration_max"}},
      {"grid", {"points", "start", "stop", "refine_gap"}},
      {"engineering",
       {"omega_1", "omega_2", "delta_1", "delta_2", "drive_amp", "drive_freq", "sideband", "omega_c_bare",
        "omega_a_bare", "pump_freq", "n_sites"}},
      {"couplings", {"omega_e1", "omega_e2", "ratio_start", "ratio_stop", "ratio_step"}},
      {"validate", {"horizon", "periods", "v_int", "photon_cutoff", "steps_per_period", "scaling"}},
      {"output", {"directory", "prefix"}},
  };
  return g;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, const LineIndex& lines) : tree_(tree), lines_(lines) {}

  std::optional<std::string> raw(const std::string& path) const {
    if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return trim(*v);
    return std::nullopt;
  }

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw ConfigError(path + ": " + what, lines_.key(path));
  }

  std::optional<double> real(const std::string& path) const {
    const auto v = raw(path);
    if (!v) return std::nullopt;
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(*v, &used);
    } catch (const std::exception&) {
      fail(path, "expected a number, got '" + *v + "'");
    }
    if (used != v->size()) fail(path, "expected a number, got '" + *v + "'");
    if (!std::isfinite(x)) fail(path, "value must be finite");
    return x;
  }

  std::optional<int> integer(const std::string& path) const {
    const auto v = raw(path);
    if (!v) return std::nullopt;
    std::size_t used = 0;
    long x = 0;
    try {
      x = std::stol(*v, &used);
    } catch (const std::exception&) {
      fail(path, "expected an integer, got '" + *v + "'");
    }
    if (used != v->size() || x < -1000000000L || x > 1000000000L)
      fail(path, "expected an integer, got '" + *v + "'");
    return static_cast<int>(x);
  }

  std::optional<bool> boolean(const std::string& path) const {
    const auto v = raw(path);
    if (!v) return std::nullopt;
    const auto s = lower(*v);
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    fail(path, "expected true/false, got '" + *v + "'");
  }

  template <class T>
  void set(T& field, const std::optional<T>& value) const {
    if (value) field = *value;
  }

 private:
  const pt::ptree& tree_;
  const LineIndex& lines_;
};

void check_grammar(const pt::ptree& tree, const LineIndex& lines, std::vector<std::string>& sections) {
  const auto& g = grammar();
  for (const auto& [name, body] : tree) {
    if (lines.section(name) == 0) throw ConfigError("key '" + name + "' outside any section", lines.key("." + name));
    const auto known = g.find(name);
    if (known == g.end()) throw ConfigError("unknown section [" + name + "]", lines.section(name));
    sections.push_back(name);
    for (const auto& [key, value] : body) {
      if (!known->second.contains(key))
        throw ConfigError("unknown key '" + key + "' in [" + name + "]", lines.key(name + "." + key));
      if (!value.empty()) throw ConfigError("nested key '" + key + "'", lines.key(name + "." + key));
    }
  }
}

void require(bool ok, const Reader& r, const std::string& path, const std::string& what) {
  if (!ok) r.fail(path, what);
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& source) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.message(), static_cast<int>(e.line()));
  }
  const LineIndex lines(text);
  RunConfig cfg;
  cfg.source = source;
  check_grammar(tree, lines, cfg.sections);
  const Reader r(tree, lines);

  auto& m = cfg.model;
  r.set(m.n_sites, r.integer("model.n_sites"));
  r.set(m.photon_cutoff, r.integer("model.photon_cutoff"));
  r.set(m.params.omega_c_tilde, r.real("model.omega_c_tilde"));
  r.set(m.params.omega_a_tilde, r.real("model.omega_a_tilde"));
  r.set(m.params.v_int, r.real("model.v_int"));
  r.set(m.params.omega, r.real("model.omega"));
  r.set(m.params.alpha, r.real("model.alpha"));
  if (const auto b = r.raw("model.boundary")) {
    const auto s = lower(*b);
    if (s == "periodic")
      m.params.boundary = Boundary::Periodic;
    else if (s == "open")
      m.params.boundary = Boundary::Open;
    else
      r.fail("model.boundary", "expected periodic or open, got '" + *b + "'");
  }
  require(m.n_sites >= 1 && m.n_sites <= 20, r, "model.n_sites", "must lie in [1, 20]");
  require(m.photon_cutoff >= 0, r, "model.photon_cutoff", "must be >= 0");
  require(m.params.alpha >= 0.0 && m.params.alpha <= 1.0, r, "model.alpha", "must lie in [0, 1]");
  require(m.params.omega >= 0.0, r, "model.omega", "must be >= 0");

  auto& s = cfg.sweep;
  if (const auto k = r.raw("sweep.kind")) {
    const auto v = lower(*k);
    if (v == "sr")
      s.protocol.kind = SweepKind::SR;
    else if (v == "srs")
      s.protocol.kind = SweepKind::SRS;
    else
      r.fail("sweep.kind", "expected sr or srs, got '" + *k + "'");
  }
  if (const auto d = r.raw("sweep.duration"); d && lower(*d) != "auto") {
    s.duration = r.real("sweep.duration");
    require(*s.duration > 0.0, r, "sweep.duration", "must be > 0 or 'auto'");
  }
  r.set(s.protocol.dt, r.real("sweep.dt"));
  require(s.protocol.dt >= 0.0, r, "sweep.dt", "must be >= 0 (0 selects the stability limit)");
  r.set(s.protocol.omega_final, r.real("sweep.omega_final"));
  require(s.protocol.omega_final >= 0.0, r, "sweep.omega_final", "must be >= 0");
  r.set(s.protocol.omega_a_start, r.real("sweep.omega_a_start"));
  r.set(s.protocol.omega_a_end, r.real("sweep.omega_a_end"));
  r.set(s.protocol.sample_stride, r.integer("sweep.sample_stride"));
  require(s.protocol.sample_stride >= 0, r, "sweep.sample_stride", "must be >= 0");
  r.set(s.protocol.sample_count, r.integer("sweep.sample_count"));
  require(s.protocol.sample_count >= 1, r, "sweep.sample_count", "must be >= 1");
  r.set(s.levels_k, r.integer("sweep.levels_k"));
  require(s.levels_k >= 1, r, "sweep.levels_k", "must be >= 1");
  r.set(s.duration_initial, r.real("sweep.duration_initial"));
  require(s.duration_initial > 0.0, r, "sweep.duration_initial", "must be > 0");
  r.set(s.duration_tolerance, r.real("sweep.duration_tolerance"));
  require(s.duration_tolerance > 0.0, r, "sweep.duration_tolerance", "must be > 0");
  r.set(s.duration_max, r.real("sweep.duration_max"));
  require(s.duration_max >= s.duration_initial, r, "sweep.duration_max", "must be >= duration_initial");

  auto& g = cfg.grid;
  r.set(g.points, r.integer("grid.points"));
  require(g.points >= 1, r, "grid.points", "must be >= 1");
  if (const auto v = r.real("grid.start")) g.start = v;
  if (const auto v = r.real("grid.stop")) g.stop = v;
  r.set(g.refine_gap, r.boolean("grid.refine_gap"));

  auto& e = cfg.engineering;
  r.set(e.omega_1, r.real("engineering.omega_1"));
  r.set(e.omega_2, r.real("engineering.omega_2"));
  r.set(e.delta_1, r.real("engineering.delta_1"));
  r.set(e.delta_2, r.real("engineering.delta_2"));
  r.set(e.drive_amp, r.real("engineering.drive_amp"));
  r.set(e.drive_freq, r.real("engineering.drive_freq"));
  r.set(e.sideband, r.integer("engineering.sideband"));
  r.set(e.omega_c_bare, r.real("engineering.omega_c_bare"));
  r.set(e.omega_a_bare, r.real("engineering.omega_a_bare"));
  r.set(e.pump_freq, r.real("engineering.pump_freq"));
  r.set(e.n_sites, r.integer("engineering.n_sites"));
  require(e.drive_freq > 0.0, r, "engineering.drive_freq", "must be > 0");
  require(e.sideband >= 0, r, "engineering.sideband", "must be >= 0");
  require(e.n_sites >= 1, r, "engineering.n_sites", "must be >= 1");

  auto& c = cfg.couplings;
  if (const auto v = r.real("couplings.omega_e1")) c.omega_e1 = v;
  if (const auto v = r.real("couplings.omega_e2")) c.omega_e2 = v;
  r.set(c.ratio_start, r.real("couplings.ratio_start"));
  r.set(c.ratio_stop, r.real("couplings.ratio_stop"));
  r.set(c.ratio_step, r.real("couplings.ratio_step"));
  require(c.ratio_step > 0.0, r, "couplings.ratio_step", "must be > 0");
  require(c.ratio_stop >= c.ratio_start, r, "couplings.ratio_stop", "must be >= ratio_start");
  require((c.ratio_stop - c.ratio_start) / c.ratio_step < 1e7, r, "couplings.ratio_step", "grid too fine");

  auto& v = cfg.validate;
  if (const auto h = r.real("validate.horizon")) {
    v.horizon = h;
    require(*h > 0.0, r, "validate.horizon", "must be > 0");
  }
  r.set(v.periods, r.integer("validate.periods"));
  require(v.periods >= 1, r, "validate.periods", "must be >= 1");
  if (const auto x = r.real("validate.v_int")) v.v_int = x;
  if (const auto n = r.integer("validate.photon_cutoff")) {
    v.photon_cutoff = n;
    require(*n >= 1, r, "validate.photon_cutoff", "must be >= 1");
  }
  r.set(v.steps_per_period, r.integer("validate.steps_per_period"));
  require(v.steps_per_period >= 4, r, "validate.steps_per_period", "must be >= 4");
  r.set(v.scaling, r.boolean("validate.scaling"));

  if (const auto d = r.raw("output.directory")) cfg.output.directory = *d;
  if (const auto p = r.raw("output.prefix")) {
    require(!p->empty() && p->find('/') == std::string::npos, r, "output.prefix", "must be a plain file stem");
    cfg.output.prefix = *p;
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

}  // namespace adm::cli
