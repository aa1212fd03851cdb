#pragma once

#include "qmhd/regularization.hpp"

namespace qmhd {

enum class TimeScheme { euler, rk2 };

std::string to_string(TimeScheme s);
TimeScheme parse_scheme(const std::string& s);

/// Tendencies of (rho, rho u, E + |B|^2/2, B) for the regularized system,
/// assembled from precomputed auxiliary terms of the same snapshot. Every
/// flux enters through a discrete divergence, so periodic totals telescope.
Tendencies rhs_regularized(const FieldState& s, const RegTerms& terms, const SourceFields& src);
Tendencies rhs_regularized(const FieldState& s, const RegParams& params, const SourceFields& src,
                           const EosModel& eos);

/// Classical viscous MHD tendencies (no regularization) with the given
/// transport coefficients.
Tendencies rhs_classical(const FieldState& s, const TransportFields& transport,
                         const SourceFields& src, const EosModel& eos);
/// Same, with mu, lambda, kappa evaluated from the laws in `params`.
Tendencies rhs_classical(const FieldState& s, const RegParams& params, const SourceFields& src,
                         const EosModel& eos);

/// Stable explicit step: cfl * min over cells of
///   min(h / (|u| + c_f), h^2 / (2 d nu_max)), nu_max = max(mu/rho, kappa/(rho eps_theta), tau c_f^2).
double cfl_dt(const FieldState& s, const RegParams& params, const EosModel& eos, double cfl);

/// Explicit time integrator for the regularized system.
class Solver {
 public:
  Solver(EosModel eos, RegParams params, Sources sources, TimeScheme scheme = TimeScheme::rk2);

  const EosModel& eos() const noexcept { return eos_; }
  const RegParams& params() const noexcept { return params_; }
  const Sources& sources() const noexcept { return sources_; }
  TimeScheme scheme() const noexcept { return scheme_; }

  Tendencies rhs(const FieldState& s) const;
  double stable_dt(const FieldState& s, double cfl) const { return cfl_dt(s, params_, eos_, cfl); }

  /// Advances conserved variables by dt and recovers primitives. Throws
  /// NonPhysicalStateError naming the cell when the result is inadmissible.
  FieldState step(const FieldState& s, double dt) const;

 private:
  EosModel eos_;
  RegParams params_;
  Sources sources_;
  TimeScheme scheme_;
};

}  // namespace qmhd
