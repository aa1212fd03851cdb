#include "qmhd/scenario.hpp"

namespace qmhd {

namespace {

/// Two constant states split at the midpoint of the x axis.
FieldState riemann_state(const Grid& grid, const EosModel& eos, double rho_l, double p_l,
                         const Vec3& b_l, double rho_r, double p_r, const Vec3& b_r) {
  FieldState s(grid);
  const double mid = 0.5 * (grid.lo(0) + grid.hi(0));
  const double theta_l = eos.temperature_from_pressure(rho_l, p_l);
  const double theta_r = eos.temperature_from_pressure(rho_r, p_r);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const bool left = grid.center(k)[0] < mid;
    s.rho[k] = left ? rho_l : rho_r;
    s.theta[k] = left ? theta_l : theta_r;
    s.B[k] = left ? b_l : b_r;
  }
  return s;
}

}  // namespace

FieldState sod_state(const Grid& grid, const EosModel& eos) {
  return riemann_state(grid, eos, 1.0, 1.0, {}, 0.125, 0.1, {});
}

FieldState briowu_state(const Grid& grid, const EosModel& eos) {
  return riemann_state(grid, eos, 1.0, 1.0, {0.75, 1.0, 0.0}, 0.125, 0.1, {0.75, -1.0, 0.0});
}

FieldState uniform_state(const Grid& grid, const EosModel& eos) {
  FieldState s(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    s.rho[k] = 1.0;
    s.theta[k] = 1.0;
    s.u[k] = {0.5, 0.25, 0.0};
    s.B[k] = {0.5, 0.25, 0.125};
  }
  s.validate(eos);
  return s;
}

ManufacturedState manufactured_for(const RunConfig& cfg, const Grid& grid) {
  SamplerBounds b;
  b.amplitude = cfg.manufactured.amplitude;
  return random_manufactured(cfg.manufactured.seed, grid, b);
}

FieldState initial_state(const RunConfig& cfg, const Grid& grid) {
  FieldState s(grid);
  if (cfg.scenario == "uniform")
    s = uniform_state(grid, cfg.eos);
  else if (cfg.scenario == "sod")
    s = sod_state(grid, cfg.eos);
  else if (cfg.scenario == "briowu")
    s = briowu_state(grid, cfg.eos);
  else if (cfg.scenario == "manufactured")
    s = manufactured_for(cfg, grid).sample(grid, cfg.manufactured.discrete_curl);
  else
    throw ConfigError("unknown scenario '" + cfg.scenario + "'");
  s.validate(cfg.eos);
  return s;
}

}  // namespace qmhd
