#pragma once

#include <optional>
#include <string>
#include <variant>

namespace qmhd {

/// Thermodynamic state at one (rho, theta) point.
struct ThermoPoint {
  double p = 0.0;
  double eps = 0.0;
  double p_rho = 0.0;
  double p_theta = 0.0;
  double eps_rho = 0.0;
  double eps_theta = 0.0;
  double s = 0.0;
  double cs2 = 0.0;           ///< C_s^2 = p_rho + theta p_theta^2 / (rho^2 eps_theta)
  std::optional<double> cp;   ///< eps_theta C_s^2 / p_rho, only where p_rho > 0
};

/// Polytropic gas: p = rho R theta, eps = cv theta, s = cv ln theta − R ln rho + s0.
struct IdealGas {
  double R = 1.0;
  double cv = 1.5;
  double s0 = 0.0;
};

/// van der Waals gas: p = rho R theta / (1 − b rho) − a rho^2, eps = cv theta − a rho,
/// s = cv ln theta + R ln((1 − b rho) / rho) + s0. Admissible for rho < 1/b.
/// With a = 0 this is the Noble–Abel covolume gas.
struct VanDerWaalsGas {
  double R = 1.0;
  double cv = 1.5;
  double a = 0.0;
  double b = 0.0;
  double s0 = 0.0;
};

/// General equation of state p(rho, theta), eps(rho, theta) with closed-form entropy.
class EosModel {
 public:
  using Variant = std::variant<IdealGas, VanDerWaalsGas>;

  explicit EosModel(Variant model);

  static EosModel ideal(double R, double cv, double s0 = 0.0);
  static EosModel ideal_gamma(double gamma, double R = 1.0);
  static EosModel van_der_waals(double R, double cv, double a, double b, double s0 = 0.0);

  const Variant& model() const noexcept { return model_; }
  std::string name() const;

  /// All thermodynamic quantities at (rho, theta). Throws DomainError when
  /// rho or theta is outside the admissible set.
  ThermoPoint evaluate(double rho, double theta) const;

  double pressure(double rho, double theta) const;
  double internal_energy(double rho, double theta) const;
  double entropy(double rho, double theta) const;

  /// eps(rho, theta -> 0+); internal energies at or below this are unreachable.
  double energy_floor(double rho) const;

  /// theta with eps(rho, theta) = eps. Uses the closed-form inverse when the
  /// model has one, otherwise invert_temperature_newton.
  double invert_temperature(double rho, double eps) const;

  /// Safeguarded Newton with bisection fallback (at most 50 iterations).
  double invert_temperature_newton(double rho, double eps) const;

  /// theta with p(rho, theta) = p (closed form for the built-in models).
  double temperature_from_pressure(double rho, double p) const;

  /// p − theta p_theta − rho^2 eps_rho.
  double maxwell_residual(double rho, double theta) const;

  bool admissible(double rho, double theta) const noexcept;

 private:
  void check_domain(double rho, double theta) const;

  Variant model_;
};

}  // namespace qmhd
