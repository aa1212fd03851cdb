#pragma once

#include <utility>

#include "qmhd/state.hpp"

namespace qmhd {

enum class TauMode {
  constant,  ///< tau = tau0 everywhere
  scaled,    ///< tau = alpha h_min / (c_f + |u|), c_f = sqrt(C_s^2 + |B|^2 / rho)
};

/// Closure for a transport coefficient (mu, lambda or kappa).
struct CoefficientLaw {
  enum class Kind {
    constant,    ///< value
    tau_linked,  ///< value * tau * rho * C_s^2 (times eps_theta for heat conduction)
  };
  Kind kind = Kind::constant;
  double value = 0.0;

  static CoefficientLaw constant(double v) { return {Kind::constant, v}; }
  static CoefficientLaw tau_linked(double v) { return {Kind::tau_linked, v}; }

  double evaluate(double tau, double rho, const ThermoPoint& th, bool thermal) const;
};

struct RegParams {
  TauMode tau_mode = TauMode::constant;
  double tau0 = 0.0;
  double alpha = 0.5;
  CoefficientLaw mu;
  CoefficientLaw lambda;
  CoefficientLaw kappa;

  /// Throws ConfigError on negative tau0, non-positive alpha in scaled mode
  /// or negative coefficient values.
  void validate() const;
};

struct TransportFields {
  ScalarField mu;
  ScalarField lambda;
  ScalarField kappa;
};

/// Auxiliary quantities of the regularized system for one snapshot.
struct RegTerms {
  Field<ThermoPoint> thermo;
  ScalarField tau;
  TransportFields transport;
  /// Brackets of w and w_hat: w = (tau / rho) w_drive, w_hat = (tau / rho) w_hat_drive.
  VectorField w_drive;
  VectorField w_hat_drive;
  VectorField w;
  VectorField w_hat;
  VectorField b_hat;
  VectorField q;
  TensorField Pi_ns;
  TensorField Pi;
  ScalarField pt_hat_p;
};

double fast_speed(double rho, const Vec3& B, const ThermoPoint& th);

ScalarField compute_tau(const FieldState& s, const RegParams& params, const EosModel& eos);
ScalarField compute_tau(const FieldState& s, const RegParams& params,
                        const Field<ThermoPoint>& thermo);

TransportFields compute_transport(const FieldState& s, const ScalarField& tau,
                                  const RegParams& params, const Field<ThermoPoint>& thermo);

/// div(rho u ⊗ u − B ⊗ B) + grad(p + |B|^2/2) − rho F
VectorField compute_w_drive(const FieldState& s, const VectorField& F,
                            const Field<ThermoPoint>& thermo);
/// rho (u·grad) u − div(B ⊗ B) + grad(p + |B|^2/2) − rho F
VectorField compute_w_hat_drive(const FieldState& s, const VectorField& F,
                                const Field<ThermoPoint>& thermo);

VectorField compute_w(const FieldState& s, const ScalarField& tau, const VectorField& F,
                      const EosModel& eos);
VectorField compute_w_hat(const FieldState& s, const ScalarField& tau, const VectorField& F,
                          const EosModel& eos);

/// div(u ⊗ B − B ⊗ u), the form used by the solver.
VectorField compute_bhat(const FieldState& s);
/// (div u) B + (u·grad) B − (B·grad) u; equal to compute_bhat only when div B = 0.
VectorField compute_bhat_expanded(const FieldState& s);

/// Euler time derivative of pressure: −(u·grad p + rho C_s^2 div u − p_theta Q / (rho eps_theta)).
ScalarField compute_pt_hat_p(const FieldState& s, const ScalarField& Q, const EosModel& eos);
ScalarField compute_pt_hat_p(const FieldState& s, const ScalarField& Q,
                             const Field<ThermoPoint>& thermo);

/// Returns (Pi_NS, Pi).
std::pair<TensorField, TensorField> compute_Pi(const FieldState& s, const ScalarField& tau,
                                               const VectorField& w_hat, const VectorField& b_hat,
                                               const ScalarField& Q, const EosModel& eos,
                                               const TransportFields& transport);

/// Regularized heat flux q (the returned vector is q, not −q).
VectorField compute_q(const FieldState& s, const ScalarField& tau, const ScalarField& Q,
                      const EosModel& eos, const ScalarField& kappa);

/// Every auxiliary term from one snapshot.
RegTerms compute_regterms(const FieldState& s, const RegParams& params, const SourceFields& src,
                          const EosModel& eos);

}  // namespace qmhd
