#include "qmhd/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace qmhd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile f;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
      f.data_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (f.has(section, key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    f.data_[section][key] = trim(line.substr(eq + 1));
  }
  return f;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void ConfigFile::set_dotted(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' lacks '='");
  const std::string lhs = trim(assignment.substr(0, eq));
  const auto dot = lhs.find('.');
  if (dot == std::string::npos)
    set("", lhs, trim(assignment.substr(eq + 1)));
  else
    set(lhs.substr(0, dot), lhs.substr(dot + 1), trim(assignment.substr(eq + 1)));
}

void ConfigFile::set(const std::string& section, const std::string& key, const std::string& value) {
  if (key.empty()) throw ConfigError("empty key");
  data_[section][key] = value;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

const std::string* ConfigFile::find(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  if (s == data_.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

std::string ConfigFile::dump() const {
  std::ostringstream os;
  if (const auto top = data_.find(""); top != data_.end())
    for (const auto& [k, v] : top->second) os << k << " = " << v << '\n';
  for (const auto& [name, kv] : data_) {
    if (name.empty()) continue;
    os << "\n[" << name << "]\n";
    for (const auto& [k, v] : kv) os << k << " = " << v << '\n';
  }
  return os.str();
}

namespace {

/// Typed, strict access to one section; remembers which keys were consumed.
class Section {
 public:
  Section(const ConfigFile& f, std::string name, std::set<std::string> allowed)
      : f_(f), name_(std::move(name)), allowed_(std::move(allowed)) {
    if (const auto it = f.sections().find(name_); it != f.sections().end())
      for (const auto& [k, v] : it->second)
        if (!allowed_.count(k)) throw ConfigError("unknown key '" + where(k) + "'");
  }

  bool has(const std::string& key) const { return f_.has(name_, key); }

  std::string str(const std::string& key, const std::string& def) const {
    const std::string* v = f_.find(name_, key);
    return v ? *v : def;
  }

  double real(const std::string& key, double def) const {
    const std::string* v = f_.find(name_, key);
    return v ? to_real(*v, key) : def;
  }

  long integer(const std::string& key, long def) const {
    const std::string* v = f_.find(name_, key);
    if (!v) return def;
    long out = 0;
    const auto* end = v->data() + v->size();
    const auto [p, ec] = std::from_chars(v->data(), end, out);
    if (ec != std::errc() || p != end)
      throw ConfigError("'" + where(key) + "' expects an integer, got '" + *v + "'");
    return out;
  }

  bool boolean(const std::string& key, bool def) const {
    const std::string* v = f_.find(name_, key);
    if (!v) return def;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ConfigError("'" + where(key) + "' expects true or false, got '" + *v + "'");
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    const std::string* v = f_.find(name_, key);
    if (!v) return out;
    for (const auto& item : split(*v, ',')) out.push_back(to_real(item, key));
    return out;
  }

  std::string where(const std::string& key) const {
    return name_.empty() ? key : name_ + "." + key;
  }

 private:
  double to_real(const std::string& s, const std::string& key) const {
    std::size_t used = 0;
    double out = 0.0;
    try {
      out = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(out))
      throw ConfigError("'" + where(key) + "' expects a number, got '" + s + "'");
    return out;
  }

  const ConfigFile& f_;
  std::string name_;
  std::set<std::string> allowed_;
};

CoefficientLaw parse_law(const Section& s, const std::string& key) {
  const std::string kind = s.str(key + "_law", "constant");
  const double v = s.real(key, 0.0);
  if (!(v >= 0.0)) throw ConfigError("'" + s.where(key) + "' must be >= 0");
  if (kind == "constant") return CoefficientLaw::constant(v);
  if (kind == "tau_linked") return CoefficientLaw::tau_linked(v);
  throw ConfigError("'" + s.where(key + "_law") + "' must be constant or tau_linked");
}

Vec3 parse_vec3(const Section& s, const std::string& key) {
  const auto v = s.reals(key);
  if (v.empty()) return {};
  if (v.size() != 3) throw ConfigError("'" + s.where(key) + "' expects three components");
  return {v[0], v[1], v[2]};
}

}  // namespace

RunConfig parse_run_config(const ConfigFile& file) {
  static const std::set<std::string> known_sections{"",        "grid",    "eos",    "regularization",
                                                    "sources", "time",    "output", "manufactured"};
  for (const auto& [name, kv] : file.sections())
    if (!known_sections.count(name)) throw ConfigError("unknown section [" + name + "]");

  RunConfig c;
  c.raw = file;

  const Section top(file, "", {"scenario"});
  c.scenario = top.str("scenario", "");
  static const std::set<std::string> scenarios{"uniform", "sod", "briowu", "manufactured"};
  if (!scenarios.count(c.scenario))
    throw ConfigError("scenario must be one of uniform, sod, briowu, manufactured; got '" +
                      c.scenario + "'");

  const Section g(file, "grid", {"dim", "cells", "lo", "hi", "boundary", "stencil_order"});
  c.grid.dim = static_cast<int>(g.integer("dim", 1));
  if (c.grid.dim != 1 && c.grid.dim != 2) throw ConfigError("grid.dim must be 1 or 2");
  {
    const auto cells = g.reals("cells");
    if (cells.empty()) throw ConfigError("grid.cells is required");
    if (cells.size() > 2) throw ConfigError("grid.cells takes at most two values");
    for (std::size_t a = 0; a < 2; ++a) {
      const double v = cells[std::min(a, cells.size() - 1)];
      if (v != std::floor(v) || v < 1) throw ConfigError("grid.cells must be positive integers");
      c.grid.cells[a] = static_cast<int>(v);
    }
  }
  c.grid.lo = g.real("lo", 0.0);
  c.grid.hi = g.real("hi", 1.0);
  {
    const auto b = split(g.str("boundary", "periodic"), ',');
    if (b.empty() || b.size() > 2) throw ConfigError("grid.boundary takes one or two values");
    c.grid.boundary = {parse_boundary(b[0]), parse_boundary(b.back())};
  }
  c.grid.stencil_order = static_cast<int>(g.integer("stencil_order", 2));

  const Section e(file, "eos", {"model", "R", "cv", "gamma", "s0", "a", "b"});
  {
    const std::string model = e.str("model", "ideal");
    const double R = e.real("R", 1.0);
    if (e.has("cv") && e.has("gamma")) throw ConfigError("give either eos.cv or eos.gamma, not both");
    double cv = e.real("cv", 1.5);
    if (e.has("gamma")) {
      const double gamma = e.real("gamma", 0.0);
      if (!(gamma > 1.0)) throw ConfigError("eos.gamma must exceed 1");
      cv = R / (gamma - 1.0);
    }
    const double s0 = e.real("s0", 0.0);
    if (model == "ideal") {
      if (e.has("a") || e.has("b")) throw ConfigError("eos.a and eos.b apply only to model vdw");
      c.eos = EosModel::ideal(R, cv, s0);
    } else if (model == "vdw") {
      c.eos = EosModel::van_der_waals(R, cv, e.real("a", 0.0), e.real("b", 0.0), s0);
    } else {
      throw ConfigError("eos.model must be ideal or vdw");
    }
  }

  const Section r(file, "regularization",
                  {"tau_mode", "tau0", "alpha", "mu", "mu_law", "lambda", "lambda_law", "kappa",
                   "kappa_law"});
  {
    const std::string mode = r.str("tau_mode", "constant");
    if (mode == "constant")
      c.reg.tau_mode = TauMode::constant;
    else if (mode == "scaled")
      c.reg.tau_mode = TauMode::scaled;
    else
      throw ConfigError("regularization.tau_mode must be constant or scaled");
    c.reg.tau0 = r.real("tau0", 0.0);
    c.reg.alpha = r.real("alpha", 0.5);
    c.reg.mu = parse_law(r, "mu");
    c.reg.lambda = parse_law(r, "lambda");
    c.reg.kappa = parse_law(r, "kappa");
    c.reg.validate();
  }

  const Section s(file, "sources", {"force", "force_value", "heat", "heat_value", "heat_amplitude"});
  c.sources.force = s.str("force", "none");
  if (c.sources.force != "none" && c.sources.force != "constant")
    throw ConfigError("sources.force must be none or constant");
  c.sources.force_value = parse_vec3(s, "force_value");
  c.sources.heat = s.str("heat", "none");
  c.sources.heat_value = s.real("heat_value", 0.0);
  c.sources.heat_amplitude = s.real("heat_amplitude", 0.0);
  if (c.sources.heat == "constant") {
    if (!(c.sources.heat_value >= 0.0)) throw ConfigError("sources.heat_value must be >= 0");
  } else if (c.sources.heat == "sine") {
    if (!(c.sources.heat_value >= std::fabs(c.sources.heat_amplitude)))
      throw ConfigError("sine heat source needs heat_value >= |heat_amplitude| so that Q >= 0");
  } else if (c.sources.heat != "none") {
    throw ConfigError("sources.heat must be none, constant or sine");
  }

  const Section t(file, "time", {"t_end", "max_steps", "cfl", "dt", "scheme"});
  c.time.t_end = t.real("t_end", 0.0);
  c.time.max_steps = t.integer("max_steps", 0);
  c.time.cfl = t.real("cfl", 0.4);
  c.time.dt = t.real("dt", 0.0);
  c.time.scheme = parse_scheme(t.str("scheme", "rk2"));
  if (!(c.time.t_end >= 0.0)) throw ConfigError("time.t_end must be >= 0");
  if (c.time.max_steps < 0) throw ConfigError("time.max_steps must be >= 0");
  if (!(c.time.cfl > 0.0 && c.time.cfl <= 1.0)) throw ConfigError("time.cfl must lie in (0, 1]");
  if (!(c.time.dt >= 0.0)) throw ConfigError("time.dt must be >= 0");
  if (c.time.t_end == 0.0 && c.time.max_steps == 0)
    throw ConfigError("set time.t_end or time.max_steps");

  const Section o(file, "output", {"directory", "every_steps", "every_time", "snapshots", "audit"});
  c.output.directory = o.str("directory", "out");
  c.output.every_steps = o.integer("every_steps", 0);
  c.output.every_time = o.real("every_time", 0.0);
  c.output.snapshots = o.boolean("snapshots", true);
  c.output.audit = o.boolean("audit", true);
  if (c.output.every_steps < 0 || !(c.output.every_time >= 0.0))
    throw ConfigError("output cadence must be >= 0");

  const Section m(file, "manufactured", {"seed", "amplitude", "discrete_curl"});
  {
    const long seed = m.integer("seed", 1);
    if (seed < 0) throw ConfigError("manufactured.seed must be >= 0");
    c.manufactured.seed = static_cast<std::uint64_t>(seed);
    c.manufactured.amplitude = m.real("amplitude", 1.0);
    if (!(c.manufactured.amplitude >= 0.0 && c.manufactured.amplitude <= 1.0))
      throw ConfigError("manufactured.amplitude must lie in [0, 1]");
    c.manufactured.discrete_curl = m.boolean("discrete_curl", true);
  }

  // Validate the grid eagerly so errors surface before any allocation.
  (void)c.make_grid();
  return c;
}

RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides) {
  ConfigFile f = ConfigFile::load(path);
  for (const auto& o : overrides) f.set_dotted(o);
  return parse_run_config(f);
}

Grid RunConfig::make_grid() const {
  return Grid(grid.dim, grid.cells, {grid.lo, grid.lo}, {grid.hi, grid.hi}, grid.boundary,
              grid.stencil_order);
}

Grid RunConfig::make_grid(int cells_per_axis) const {
  return Grid(grid.dim, {cells_per_axis, cells_per_axis}, {grid.lo, grid.lo}, {grid.hi, grid.hi},
              grid.boundary, grid.stencil_order);
}

Sources RunConfig::make_sources() const {
  Sources s = Sources::none();
  if (sources.force == "constant") {
    const Vec3 f = sources.force_value;
    s.force = [f](const Vec3&, double) { return f; };
  }
  if (sources.heat == "constant") {
    const double q = sources.heat_value;
    s.heat = [q](const Vec3&, double) { return q; };
  } else if (sources.heat == "sine") {
    const double q0 = sources.heat_value;
    const double q1 = sources.heat_amplitude;
    const double k = 2.0 * std::numbers::pi / (grid.hi - grid.lo);
    const double lo = grid.lo;
    s.heat = [q0, q1, k, lo](const Vec3& x, double) {
      return std::fmax(0.0, q0 + q1 * std::sin(k * (x[0] - lo)));
    };
  }
  return s;
}

}  // namespace qmhd
