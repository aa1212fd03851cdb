#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmhd/eos.hpp"
#include "qmhd/grid.hpp"
#include "qmhd/regularization.hpp"
#include "qmhd/system.hpp"

namespace qmhd {

/// Sectioned `key = value` text. Keys before the first `[section]` header
/// belong to the unnamed top-level section. `#` and `;` start comments.
class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::string& path);

  /// `section.key = value`, or `key = value` for the top-level section.
  void set_dotted(const std::string& assignment);
  void set(const std::string& section, const std::string& key, const std::string& value);

  bool has(const std::string& section, const std::string& key) const;
  const std::string* find(const std::string& section, const std::string& key) const;

  /// Canonical text form (sorted), suitable for echoing into the output directory.
  std::string dump() const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const noexcept {
    return data_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> data_;
};

struct GridConfig {
  int dim = 1;
  std::array<int, 2> cells{64, 64};
  double lo = 0.0;
  double hi = 1.0;
  std::array<Boundary, 2> boundary{Boundary::periodic, Boundary::periodic};
  int stencil_order = 2;
};

struct SourceConfig {
  std::string force = "none";  ///< none | constant
  Vec3 force_value;
  std::string heat = "none";   ///< none | constant | sine
  double heat_value = 0.0;     ///< constant Q, or the offset of the sine profile
  double heat_amplitude = 0.0; ///< Q = heat_value + heat_amplitude sin(2 pi x / L)
};

struct TimeConfig {
  double t_end = 0.0;
  long max_steps = 0;  ///< 0 means unlimited
  double cfl = 0.4;
  double dt = 0.0;     ///< fixed step if > 0, otherwise from the CFL bound
  TimeScheme scheme = TimeScheme::rk2;
};

struct OutputConfig {
  std::string directory = "out";
  long every_steps = 0;
  double every_time = 0.0;
  bool snapshots = true;
  bool audit = true;
};

struct ManufacturedConfig {
  std::uint64_t seed = 1;
  double amplitude = 1.0;
  bool discrete_curl = true;
};

struct RunConfig {
  std::string scenario;
  GridConfig grid;
  EosModel eos = EosModel::ideal(1.0, 1.5);
  RegParams reg;
  SourceConfig sources;
  TimeConfig time;
  OutputConfig output;
  ManufacturedConfig manufactured;
  ConfigFile raw;

  Grid make_grid() const;
  Grid make_grid(int cells_per_axis) const;
  Sources make_sources() const;
};

/// Strict conversion: unknown sections or keys, malformed numbers and
/// out-of-range physical parameters raise ConfigError.
RunConfig parse_run_config(const ConfigFile& file);
RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace qmhd
