#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "qmhd/state.hpp"

namespace qmhd {

/// Column names of a snapshot: coordinates, then rho, u1..u3, theta, B1..B3, p.
std::vector<std::string> snapshot_columns(int dim);

/// Writes one row per cell with round-trip precision. Throws IoError.
void write_snapshot(const std::string& path, const FieldState& s, const EosModel& eos);

/// Reads a snapshot written for `grid`; cell order and coordinates must match.
FieldState read_snapshot(const std::string& path, const Grid& grid);

/// One row of the audit time series.
struct AuditRow {
  long step = 0;
  double t = 0.0;
  double mass = 0.0;
  Vec3 momentum;
  double energy = 0.0;
  double entropy = 0.0;
  double entropy_corrected = 0.0;  ///< entropy + time-integrated boundary outflow
  double max_div_B = 0.0;
  double min_xi = 0.0;
  double equiv_err = 0.0;
  double res_internal_energy = 0.0;
  double res_entropy = 0.0;
};

std::string audit_header();
std::string format_audit_row(const AuditRow& row);

/// Appends audit rows, flushing after each so partial output stays well formed.
class AuditWriter {
 public:
  explicit AuditWriter(const std::string& path);
  void write(const AuditRow& row);

 private:
  std::ofstream out_;
  std::string path_;
};

/// Writes `text` to `path`, throwing IoError on failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace qmhd
