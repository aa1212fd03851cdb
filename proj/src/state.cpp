#include "qmhd/state.hpp"

#include <cmath>
#include <sstream>

namespace qmhd {

namespace {

[[noreturn]] void report_cell(const Grid& grid, std::size_t k, const std::string& why, double rho,
                              double theta) {
  std::ostringstream os;
  os.precision(17);
  const auto [i, j] = grid.ij(k);
  os << why << " at cell " << k << " (i=" << i << ", j=" << j << "): rho = " << rho
     << ", theta = " << theta;
  throw NonPhysicalStateError(os.str(), k);
}

}  // namespace

void FieldState::validate(const EosModel& eos) const {
  require_shape(grid, rho, "rho");
  require_shape(grid, u, "u");
  require_shape(grid, theta, "theta");
  require_shape(grid, B, "B");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!eos.admissible(rho[k], theta[k]))
      report_cell(grid, k, "inadmissible state", rho[k], theta[k]);
    if (!std::isfinite(norm2(u[k])) || !std::isfinite(norm2(B[k])))
      report_cell(grid, k, "non-finite velocity or magnetic field", rho[k], theta[k]);
  }
}

void ConservedState::axpy(double a, const ConservedState& o) {
  for (std::size_t k = 0; k < rho.size(); ++k) {
    rho[k] += a * o.rho[k];
    mom[k] += a * o.mom[k];
    energy[k] += a * o.energy[k];
    B[k] += a * o.B[k];
  }
}

double ConservedState::max_abs() const {
  return std::fmax(std::fmax(qmhd::max_abs(rho), qmhd::max_abs(mom)),
                   std::fmax(qmhd::max_abs(energy), qmhd::max_abs(B)));
}

ConservedState to_conserved(const FieldState& s, const EosModel& eos) {
  s.validate(eos);
  ConservedState c(s.grid);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const double rho = s.rho[k];
    c.rho[k] = rho;
    c.mom[k] = rho * s.u[k];
    c.energy[k] = 0.5 * rho * norm2(s.u[k]) + rho * eos.internal_energy(rho, s.theta[k]) +
                  0.5 * norm2(s.B[k]);
    c.B[k] = s.B[k];
  }
  return c;
}

FieldState to_primitive(const Grid& grid, const ConservedState& c, const EosModel& eos, double t) {
  FieldState s(grid);
  s.t = t;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double rho = c.rho[k];
    if (!(rho > 0.0) || !std::isfinite(rho)) report_cell(grid, k, "non-positive density", rho, 0.0);
    const Vec3 u = (1.0 / rho) * c.mom[k];
    const double eps = (c.energy[k] - 0.5 * norm2(c.B[k]) - 0.5 * rho * norm2(u)) / rho;
    double theta = 0.0;
    try {
      theta = eos.invert_temperature(rho, eps);
    } catch (const NonPhysicalStateError& e) {
      report_cell(grid, k, e.what(), rho, theta);
    }
    s.rho[k] = rho;
    s.u[k] = u;
    s.theta[k] = theta;
    s.B[k] = c.B[k];
  }
  return s;
}

Field<ThermoPoint> thermo_field(const FieldState& s, const EosModel& eos) {
  Field<ThermoPoint> out(s.grid);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    try {
      out[k] = eos.evaluate(s.rho[k], s.theta[k]);
    } catch (const DomainError& e) {
      report_cell(s.grid, k, e.what(), s.rho[k], s.theta[k]);
    }
  }
  return out;
}

Sources Sources::none() { return constant(Vec3{}, 0.0); }

Sources Sources::constant(const Vec3& force, double heat) {
  if (!(heat >= 0.0)) throw ConfigError("heat source Q must be non-negative");
  return Sources{[force](const Vec3&, double) { return force; },
                 [heat](const Vec3&, double) { return heat; }};
}

SourceFields sample_sources(const Sources& src, const Grid& grid, double t) {
  SourceFields out{VectorField(grid), ScalarField(grid)};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3 x = grid.center(k);
    if (src.force) out.F[k] = src.force(x, t);
    if (src.heat) {
      const double q = src.heat(x, t);
      if (!(q >= 0.0)) {
        std::ostringstream os;
        os << "heat source Q must be non-negative, got " << q << " at cell " << k;
        throw ConfigError(os.str());
      }
      out.Q[k] = q;
    }
  }
  return out;
}

}  // namespace qmhd
