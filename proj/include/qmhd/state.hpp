#pragma once

#include <functional>

#include "qmhd/eos.hpp"
#include "qmhd/grid.hpp"

namespace qmhd {

/// Primitive unknowns (rho, u, theta, B) at one time level.
struct FieldState {
  Grid grid;
  ScalarField rho;
  VectorField u;
  ScalarField theta;
  VectorField B;
  double t = 0.0;

  explicit FieldState(const Grid& g)
      : grid(g), rho(g, 1.0), u(g), theta(g, 1.0), B(g) {}

  /// Throws ShapeError on mismatched fields and NonPhysicalStateError (with
  /// the offending cell) when rho <= 0, theta <= 0 or the EOS rejects a cell.
  void validate(const EosModel& eos) const;
};

/// Conserved variables (rho, rho u, E + |B|^2/2, B). Also used for tendencies.
struct ConservedState {
  ScalarField rho;
  VectorField mom;
  ScalarField energy;
  VectorField B;

  ConservedState() = default;
  explicit ConservedState(const Grid& g) : rho(g), mom(g), energy(g), B(g) {}

  /// this += a * other
  void axpy(double a, const ConservedState& other);
  double max_abs() const;
};

using Tendencies = ConservedState;

ConservedState to_conserved(const FieldState& s, const EosModel& eos);
/// Recovers primitives; theta via EosModel::invert_temperature. Reports the
/// first inadmissible cell through NonPhysicalStateError.
FieldState to_primitive(const Grid& grid, const ConservedState& c, const EosModel& eos, double t);

/// Thermodynamic quantities per cell.
Field<ThermoPoint> thermo_field(const FieldState& s, const EosModel& eos);

/// Body force F(x, t) and heat source Q(x, t) >= 0.
struct Sources {
  std::function<Vec3(const Vec3&, double)> force;
  std::function<double(const Vec3&, double)> heat;

  static Sources none();
  static Sources constant(const Vec3& force, double heat);
};

struct SourceFields {
  VectorField F;
  ScalarField Q;
};

/// Samples the sources at cell centres. Throws ConfigError when Q < 0 anywhere.
SourceFields sample_sources(const Sources& src, const Grid& grid, double t);

}  // namespace qmhd
