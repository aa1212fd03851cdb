#include "qmhd/regularization.hpp"

#include <cmath>

namespace qmhd {

double CoefficientLaw::evaluate(double tau, double rho, const ThermoPoint& th, bool thermal) const {
  if (kind == Kind::constant) return value;
  const double v = value * tau * rho * th.cs2;
  return thermal ? v * th.eps_theta : v;
}

void RegParams::validate() const {
  if (!(tau0 >= 0.0) || !std::isfinite(tau0)) throw ConfigError("tau0 must be >= 0");
  if (tau_mode == TauMode::scaled && !(alpha > 0.0))
    throw ConfigError("scaled tau mode requires alpha > 0");
  for (const auto* law : {&mu, &lambda, &kappa})
    if (!(law->value >= 0.0) || !std::isfinite(law->value))
      throw ConfigError("transport coefficients must be >= 0");
}

double fast_speed(double rho, const Vec3& B, const ThermoPoint& th) {
  return std::sqrt(th.cs2 + norm2(B) / rho);
}

ScalarField compute_tau(const FieldState& s, const RegParams& params,
                        const Field<ThermoPoint>& thermo) {
  params.validate();
  ScalarField tau(s.grid, params.tau0);
  if (params.tau_mode == TauMode::constant) return tau;
  const double h = s.grid.min_spacing();
  for (std::size_t k = 0; k < s.grid.size(); ++k)
    tau[k] = params.alpha * h / (fast_speed(s.rho[k], s.B[k], thermo[k]) + norm(s.u[k]));
  return tau;
}

ScalarField compute_tau(const FieldState& s, const RegParams& params, const EosModel& eos) {
  return compute_tau(s, params, thermo_field(s, eos));
}

TransportFields compute_transport(const FieldState& s, const ScalarField& tau,
                                  const RegParams& params, const Field<ThermoPoint>& thermo) {
  TransportFields t{ScalarField(s.grid), ScalarField(s.grid), ScalarField(s.grid)};
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    t.mu[k] = params.mu.evaluate(tau[k], s.rho[k], thermo[k], false);
    t.lambda[k] = params.lambda.evaluate(tau[k], s.rho[k], thermo[k], false);
    t.kappa[k] = params.kappa.evaluate(tau[k], s.rho[k], thermo[k], true);
  }
  return t;
}

namespace {

/// grad(p + |B|^2 / 2) − rho F
VectorField pressure_drive(const FieldState& s, const VectorField& F,
                           const Field<ThermoPoint>& thermo) {
  const ScalarField ptot = map_cells<double>(
      s.grid, [](const ThermoPoint& th, const Vec3& b) { return th.p + 0.5 * norm2(b); }, thermo,
      s.B);
  VectorField g = grad(s.grid, ptot);
  for (std::size_t k = 0; k < s.grid.size(); ++k) g[k] -= s.rho[k] * F[k];
  return g;
}

VectorField scale_by_tau_over_rho(const FieldState& s, const ScalarField& tau,
                                  const VectorField& v) {
  return map_cells<Vec3>(
      s.grid, [](double t, double r, const Vec3& a) { return (t / r) * a; }, tau, s.rho, v);
}

ScalarField compute_pt_hat_p_impl(const FieldState& s, const ScalarField& Q,
                                  const Field<ThermoPoint>& thermo, const VectorField& grad_p,
                                  const ScalarField& div_u) {
  ScalarField out(s.grid);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const ThermoPoint& th = thermo[k];
    const double rho = s.rho[k];
    out[k] = -(dot(s.u[k], grad_p[k]) + rho * th.cs2 * div_u[k] -
               th.p_theta / (rho * th.eps_theta) * Q[k]);
  }
  return out;
}

ScalarField pressure(const FieldState& s, const Field<ThermoPoint>& thermo) {
  return map_cells<double>(s.grid, [](const ThermoPoint& th) { return th.p; }, thermo);
}

Mat3 navier_stokes_stress(const Mat3& grad_u, double mu, double lambda) {
  const double du = trace(grad_u);
  const Mat3 strain = 0.5 * (grad_u + transpose(grad_u));
  return mu * (2.0 * strain - (2.0 / 3.0) * du * Mat3::identity()) +
         lambda * du * Mat3::identity();
}

std::pair<TensorField, TensorField> compute_Pi_impl(const FieldState& s, const ScalarField& tau,
                                                    const VectorField& w_hat,
                                                    const VectorField& b_hat,
                                                    const ScalarField& pt_hat_p,
                                                    const TransportFields& transport,
                                                    const TensorField& grad_u) {
  TensorField ns(s.grid);
  TensorField pi(s.grid);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    ns[k] = navier_stokes_stress(grad_u[k], transport.mu[k], transport.lambda[k]);
    const Vec3& u = s.u[k];
    const Vec3& B = s.B[k];
    const Vec3& b = b_hat[k];
    pi[k] = ns[k] + s.rho[k] * outer(u, w_hat[k]) - tau[k] * (outer(b, B) + outer(B, b)) +
            (tau[k] * (-pt_hat_p[k] + dot(b, B))) * Mat3::identity();
  }
  return {std::move(ns), std::move(pi)};
}

VectorField compute_q_impl(const FieldState& s, const ScalarField& tau, const ScalarField& Q,
                           const Field<ThermoPoint>& thermo, const ScalarField& kappa) {
  const VectorField grad_theta = grad(s.grid, s.theta);
  const VectorField grad_rho = grad(s.grid, s.rho);
  const VectorField grad_eps = grad(
      s.grid, map_cells<double>(s.grid, [](const ThermoPoint& th) { return th.eps; }, thermo));
  VectorField q(s.grid);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const double rho = s.rho[k];
    const Vec3& u = s.u[k];
    const double work =
        rho * (dot(u, grad_eps[k]) - thermo[k].p / (rho * rho) * dot(u, grad_rho[k])) - Q[k];
    q[k] = -(kappa[k] * grad_theta[k] + (tau[k] * work) * u);
  }
  return q;
}

}  // namespace

VectorField compute_w_drive(const FieldState& s, const VectorField& F,
                            const Field<ThermoPoint>& thermo) {
  require_shape(s.grid, F, "F");
  const TensorField flux = map_cells<Mat3>(
      s.grid, [](double r, const Vec3& u, const Vec3& b) { return r * outer(u, u) - outer(b, b); },
      s.rho, s.u, s.B);
  VectorField d = div_tensor(s.grid, flux);
  const VectorField p = pressure_drive(s, F, thermo);
  for (std::size_t k = 0; k < s.grid.size(); ++k) d[k] += p[k];
  return d;
}

VectorField compute_w_hat_drive(const FieldState& s, const VectorField& F,
                                const Field<ThermoPoint>& thermo) {
  require_shape(s.grid, F, "F");
  const VectorField conv = convective(s.grid, s.u, s.u);
  const VectorField div_bb = div_tensor(
      s.grid, map_cells<Mat3>(s.grid, [](const Vec3& b) { return outer(b, b); }, s.B));
  const VectorField p = pressure_drive(s, F, thermo);
  VectorField d(s.grid);
  for (std::size_t k = 0; k < s.grid.size(); ++k)
    d[k] = s.rho[k] * conv[k] - div_bb[k] + p[k];
  return d;
}

VectorField compute_w(const FieldState& s, const ScalarField& tau, const VectorField& F,
                      const EosModel& eos) {
  return scale_by_tau_over_rho(s, tau, compute_w_drive(s, F, thermo_field(s, eos)));
}

VectorField compute_w_hat(const FieldState& s, const ScalarField& tau, const VectorField& F,
                          const EosModel& eos) {
  return scale_by_tau_over_rho(s, tau, compute_w_hat_drive(s, F, thermo_field(s, eos)));
}

VectorField compute_bhat(const FieldState& s) {
  return div_tensor(
      s.grid, map_cells<Mat3>(s.grid, [](const Vec3& u, const Vec3& b) { return wedge(u, b); },
                              s.u, s.B));
}

VectorField compute_bhat_expanded(const FieldState& s) {
  const ScalarField du = div(s.grid, s.u);
  const VectorField ub = convective(s.grid, s.u, s.B);
  const VectorField bu = convective(s.grid, s.B, s.u);
  VectorField out(s.grid);
  for (std::size_t k = 0; k < s.grid.size(); ++k) out[k] = du[k] * s.B[k] + ub[k] - bu[k];
  return out;
}

ScalarField compute_pt_hat_p(const FieldState& s, const ScalarField& Q,
                             const Field<ThermoPoint>& thermo) {
  require_shape(s.grid, Q, "Q");
  return compute_pt_hat_p_impl(s, Q, thermo, grad(s.grid, pressure(s, thermo)),
                               div(s.grid, s.u));
}

ScalarField compute_pt_hat_p(const FieldState& s, const ScalarField& Q, const EosModel& eos) {
  return compute_pt_hat_p(s, Q, thermo_field(s, eos));
}

std::pair<TensorField, TensorField> compute_Pi(const FieldState& s, const ScalarField& tau,
                                               const VectorField& w_hat, const VectorField& b_hat,
                                               const ScalarField& Q, const EosModel& eos,
                                               const TransportFields& transport) {
  const auto thermo = thermo_field(s, eos);
  return compute_Pi_impl(s, tau, w_hat, b_hat, compute_pt_hat_p(s, Q, thermo), transport,
                         grad_vec(s.grid, s.u));
}

VectorField compute_q(const FieldState& s, const ScalarField& tau, const ScalarField& Q,
                      const EosModel& eos, const ScalarField& kappa) {
  return compute_q_impl(s, tau, Q, thermo_field(s, eos), kappa);
}

RegTerms compute_regterms(const FieldState& s, const RegParams& params, const SourceFields& src,
                          const EosModel& eos) {
  require_shape(s.grid, src.F, "F");
  require_shape(s.grid, src.Q, "Q");
  RegTerms r;
  r.thermo = thermo_field(s, eos);
  r.tau = compute_tau(s, params, r.thermo);
  r.transport = compute_transport(s, r.tau, params, r.thermo);
  r.w_drive = compute_w_drive(s, src.F, r.thermo);
  r.w_hat_drive = compute_w_hat_drive(s, src.F, r.thermo);
  r.w = scale_by_tau_over_rho(s, r.tau, r.w_drive);
  r.w_hat = scale_by_tau_over_rho(s, r.tau, r.w_hat_drive);
  r.b_hat = compute_bhat(s);
  r.pt_hat_p = compute_pt_hat_p(s, src.Q, r.thermo);
  std::tie(r.Pi_ns, r.Pi) = compute_Pi_impl(s, r.tau, r.w_hat, r.b_hat, r.pt_hat_p, r.transport,
                                            grad_vec(s.grid, s.u));
  r.q = compute_q_impl(s, r.tau, src.Q, r.thermo, r.transport.kappa);
  return r;
}

}  // namespace qmhd
