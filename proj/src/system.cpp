#include "qmhd/system.hpp"

#include <cmath>
#include <limits>

namespace qmhd {

std::string to_string(TimeScheme s) { return s == TimeScheme::euler ? "euler" : "rk2"; }

TimeScheme parse_scheme(const std::string& s) {
  if (s == "euler") return TimeScheme::euler;
  if (s == "rk2") return TimeScheme::rk2;
  throw ConfigError("unknown time scheme '" + s + "' (expected euler or rk2)");
}

namespace {

double total_nonmagnetic_energy(double rho, const Vec3& u, const ThermoPoint& th) {
  return 0.5 * rho * norm2(u) + rho * th.eps;
}

/// Negated divergences of the four fluxes, plus sources.
Tendencies assemble(const Grid& grid, const VectorField& mass_flux, const TensorField& mom_flux,
                    const VectorField& energy_flux, const TensorField& faraday_flux,
                    const VectorField& mom_source, const ScalarField& energy_source) {
  Tendencies d(grid);
  const ScalarField dm = div(grid, mass_flux);
  const VectorField dp = div_tensor(grid, mom_flux);
  const ScalarField de = div(grid, energy_flux);
  const VectorField db = div_tensor(grid, faraday_flux);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    d.rho[k] = -dm[k];
    d.mom[k] = mom_source[k] - dp[k];
    d.energy[k] = energy_source[k] - de[k];
    d.B[k] = -db[k];
  }
  return d;
}

}  // namespace

Tendencies rhs_regularized(const FieldState& s, const RegTerms& r, const SourceFields& src) {
  const Grid& g = s.grid;
  require_shape(g, src.F, "F");
  require_shape(g, src.Q, "Q");
  const std::size_t n = g.size();

  VectorField mass_flux(g);
  TensorField mom_flux(g);
  VectorField energy_flux(g);
  TensorField faraday_flux(g);
  VectorField mom_source(g);
  ScalarField energy_source(g);

  const ScalarField div_mom =
      div(g, map_cells<Vec3>(g, [](double rho, const Vec3& u) { return rho * u; }, s.rho, s.u));

  for (std::size_t k = 0; k < n; ++k) {
    const double rho = s.rho[k];
    const Vec3& u = s.u[k];
    const Vec3& B = s.B[k];
    const ThermoPoint& th = r.thermo[k];
    const double tau = r.tau[k];
    const double b2 = norm2(B);
    const Vec3 v = u - r.w[k];       // u − w
    const Vec3 vh = u - r.w_hat[k];  // u − w_hat

    mass_flux[k] = rho * v;
    mom_flux[k] = outer(rho * v, u) - outer(B, B) + (th.p + 0.5 * b2) * Mat3::identity() - r.Pi[k];
    energy_flux[k] = (total_nonmagnetic_energy(rho, u, th) + th.p) * v + b2 * vh -
                     dot(vh, B) * B + r.q[k] - (tau * dot(r.b_hat[k], B)) * u - apply(r.Pi[k], u);
    faraday_flux[k] = wedge(vh, B) - tau * wedge(u, r.b_hat[k]);

    mom_source[k] = (rho - tau * div_mom[k]) * src.F[k];
    energy_source[k] = rho * dot(v, src.F[k]) + src.Q[k];
  }
  return assemble(g, mass_flux, mom_flux, energy_flux, faraday_flux, mom_source, energy_source);
}

Tendencies rhs_regularized(const FieldState& s, const RegParams& params, const SourceFields& src,
                           const EosModel& eos) {
  return rhs_regularized(s, compute_regterms(s, params, src, eos), src);
}

Tendencies rhs_classical(const FieldState& s, const TransportFields& tr, const SourceFields& src,
                         const EosModel& eos) {
  const Grid& g = s.grid;
  require_shape(g, src.F, "F");
  require_shape(g, src.Q, "Q");
  const auto thermo = thermo_field(s, eos);
  const TensorField grad_u = grad_vec(g, s.u);
  const VectorField grad_theta = grad(g, s.theta);

  VectorField mass_flux(g);
  TensorField mom_flux(g);
  VectorField energy_flux(g);
  TensorField faraday_flux(g);
  VectorField mom_source(g);
  ScalarField energy_source(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double rho = s.rho[k];
    const Vec3& u = s.u[k];
    const Vec3& B = s.B[k];
    const ThermoPoint& th = thermo[k];
    const double b2 = norm2(B);
    const double du = trace(grad_u[k]);
    const Mat3 strain = 0.5 * (grad_u[k] + transpose(grad_u[k]));
    const Mat3 ns = tr.mu[k] * (2.0 * strain - (2.0 / 3.0) * du * Mat3::identity()) +
                    tr.lambda[k] * du * Mat3::identity();

    mass_flux[k] = rho * u;
    mom_flux[k] = rho * outer(u, u) - outer(B, B) + (th.p + 0.5 * b2) * Mat3::identity() - ns;
    energy_flux[k] = (total_nonmagnetic_energy(rho, u, th) + th.p + b2) * u - dot(u, B) * B -
                     tr.kappa[k] * grad_theta[k] - apply(ns, u);
    faraday_flux[k] = wedge(u, B);
    mom_source[k] = rho * src.F[k];
    energy_source[k] = rho * dot(u, src.F[k]) + src.Q[k];
  }
  return assemble(g, mass_flux, mom_flux, energy_flux, faraday_flux, mom_source, energy_source);
}

Tendencies rhs_classical(const FieldState& s, const RegParams& params, const SourceFields& src,
                         const EosModel& eos) {
  const auto thermo = thermo_field(s, eos);
  const ScalarField tau = compute_tau(s, params, thermo);
  return rhs_classical(s, compute_transport(s, tau, params, thermo), src, eos);
}

double cfl_dt(const FieldState& s, const RegParams& params, const EosModel& eos, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  const auto thermo = thermo_field(s, eos);
  const ScalarField tau = compute_tau(s, params, thermo);
  const TransportFields tr = compute_transport(s, tau, params, thermo);
  const double h = s.grid.min_spacing();
  const double d = s.grid.dim();
  double dt = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const double rho = s.rho[k];
    const double cf = fast_speed(rho, s.B[k], thermo[k]);
    dt = std::fmin(dt, h / (norm(s.u[k]) + cf));
    const double nu = std::fmax(std::fmax(tr.mu[k] / rho, tr.lambda[k] / rho),
                                std::fmax(tr.kappa[k] / (rho * thermo[k].eps_theta), tau[k] * cf * cf));
    if (nu > 0.0) dt = std::fmin(dt, h * h / (2.0 * d * nu));
  }
  return cfl * dt;
}

Solver::Solver(EosModel eos, RegParams params, Sources sources, TimeScheme scheme)
    : eos_(std::move(eos)), params_(params), sources_(std::move(sources)), scheme_(scheme) {
  params_.validate();
}

Tendencies Solver::rhs(const FieldState& s) const {
  return rhs_regularized(s, params_, sample_sources(sources_, s.grid, s.t), eos_);
}

FieldState Solver::step(const FieldState& s, double dt) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive");
  const ConservedState u0 = to_conserved(s, eos_);
  ConservedState u1 = u0;
  u1.axpy(dt, rhs(s));
  if (scheme_ == TimeScheme::euler) {
    FieldState next = to_primitive(s.grid, u1, eos_, s.t + dt);
    next.validate(eos_);
    return next;
  }
  // Heun: U^{n+1} = (U^n + U^1 + dt L(U^1)) / 2
  const FieldState s1 = to_primitive(s.grid, u1, eos_, s.t + dt);
  ConservedState u2 = u1;
  u2.axpy(dt, rhs(s1));
  u2.axpy(1.0, u0);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    u2.rho[k] *= 0.5;
    u2.mom[k] *= 0.5;
    u2.energy[k] *= 0.5;
    u2.B[k] *= 0.5;
  }
  FieldState next = to_primitive(s.grid, u2, eos_, s.t + dt);
  next.validate(eos_);
  return next;
}

}  // namespace qmhd
