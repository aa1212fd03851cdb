#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qmhd/config.hpp"
#include "qmhd/diagnostics.hpp"
#include "qmhd/io.hpp"

namespace qmhd {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int physical = 3;
inline constexpr int io = 4;
}  // namespace exit_code

Solver make_solver(const RunConfig& cfg);

/// Diagnostics row for one snapshot: totals, entropy audit, balance residuals.
AuditRow audit_row(const FieldState& s, const Solver& solver, long step,
                   double entropy_outflow_integral);

struct RunSummary {
  int status = exit_code::ok;
  long steps = 0;
  double t = 0.0;
  std::string message;
  std::vector<AuditRow> audit;
};

/// init -> step loop -> outputs. Writes config.ini, audit.csv and snapshots
/// into cfg.output.directory. Admissibility failures stop the run with
/// status 3 after flushing snapshot_last_good.csv; I/O failures give status 4.
RunSummary run(const RunConfig& cfg, std::ostream& log);

struct ConvergenceResult {
  StudyReport identities;
  StudyReport balances;
};

/// Refinement study of the manufactured scenario; writes convergence.csv.
ConvergenceResult convergence(const RunConfig& cfg, const std::vector<int>& levels,
                              std::ostream& log);
std::string format_convergence_table(const ConvergenceResult& r);

/// Recomputes the auxiliary terms and entropy audit on a stored snapshot.
AuditRow audit_snapshot(const std::string& snapshot_path, const RunConfig& cfg);

}  // namespace qmhd
