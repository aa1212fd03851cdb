#include "qmhd/eos.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qmhd/error.hpp"

namespace qmhd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ThermoPoint raw_point(const IdealGas& g, double rho, double theta) {
  ThermoPoint t;
  t.p = rho * g.R * theta;
  t.eps = g.cv * theta;
  t.p_rho = g.R * theta;
  t.p_theta = rho * g.R;
  t.eps_rho = 0.0;
  t.eps_theta = g.cv;
  t.s = g.cv * std::log(theta) - g.R * std::log(rho) + g.s0;
  return t;
}

ThermoPoint raw_point(const VanDerWaalsGas& g, double rho, double theta) {
  const double free = 1.0 - g.b * rho;
  ThermoPoint t;
  t.p = rho * g.R * theta / free - g.a * rho * rho;
  t.eps = g.cv * theta - g.a * rho;
  t.p_rho = g.R * theta / (free * free) - 2.0 * g.a * rho;
  t.p_theta = rho * g.R / free;
  t.eps_rho = -g.a;
  t.eps_theta = g.cv;
  t.s = g.cv * std::log(theta) + g.R * std::log(free / rho) + g.s0;
  return t;
}

void validate(const IdealGas& g) {
  if (!(g.R > 0.0) || !(g.cv > 0.0) || !std::isfinite(g.s0))
    throw ConfigError("ideal gas requires R > 0 and cv > 0");
}

void validate(const VanDerWaalsGas& g) {
  if (!(g.R > 0.0) || !(g.cv > 0.0) || !(g.a >= 0.0) || !(g.b >= 0.0) || !std::isfinite(g.s0))
    throw ConfigError("van der Waals gas requires R > 0, cv > 0, a >= 0, b >= 0");
}

}  // namespace

EosModel::EosModel(Variant model) : model_(model) {
  std::visit([](const auto& g) { validate(g); }, model_);
}

EosModel EosModel::ideal(double R, double cv, double s0) { return EosModel(IdealGas{R, cv, s0}); }

EosModel EosModel::ideal_gamma(double gamma, double R) {
  if (!(gamma > 1.0)) throw ConfigError("ideal gas requires gamma > 1");
  return ideal(R, R / (gamma - 1.0));
}

EosModel EosModel::van_der_waals(double R, double cv, double a, double b, double s0) {
  return EosModel(VanDerWaalsGas{R, cv, a, b, s0});
}

std::string EosModel::name() const {
  return std::visit(overloaded{[](const IdealGas&) { return std::string("ideal"); },
                               [](const VanDerWaalsGas&) { return std::string("vdw"); }},
                    model_);
}

bool EosModel::admissible(double rho, double theta) const noexcept {
  if (!(rho > 0.0) || !(theta > 0.0) || !std::isfinite(rho) || !std::isfinite(theta)) return false;
  if (const auto* g = std::get_if<VanDerWaalsGas>(&model_)) return g->b * rho < 1.0;
  return true;
}

void EosModel::check_domain(double rho, double theta) const {
  if (admissible(rho, theta)) return;
  std::ostringstream os;
  os.precision(17);
  if (!(rho > 0.0) || !std::isfinite(rho))
    os << "density must be positive, got rho = " << rho;
  else if (!(theta > 0.0) || !std::isfinite(theta))
    os << "temperature must be positive, got theta = " << theta;
  else
    os << "density exceeds covolume limit 1/b, got rho = " << rho;
  throw DomainError(os.str());
}

ThermoPoint EosModel::evaluate(double rho, double theta) const {
  check_domain(rho, theta);
  ThermoPoint t = std::visit([&](const auto& g) { return raw_point(g, rho, theta); }, model_);
  t.cs2 = t.p_rho + theta * t.p_theta * t.p_theta / (rho * rho * t.eps_theta);
  if (t.p_rho > 0.0) t.cp = t.eps_theta * t.cs2 / t.p_rho;
  return t;
}

double EosModel::pressure(double rho, double theta) const { return evaluate(rho, theta).p; }

double EosModel::internal_energy(double rho, double theta) const {
  return evaluate(rho, theta).eps;
}

double EosModel::entropy(double rho, double theta) const { return evaluate(rho, theta).s; }

double EosModel::energy_floor(double rho) const {
  return std::visit(overloaded{[](const IdealGas&) { return 0.0; },
                               [rho](const VanDerWaalsGas& g) { return -g.a * rho; }},
                    model_);
}

double EosModel::maxwell_residual(double rho, double theta) const {
  const ThermoPoint t = evaluate(rho, theta);
  return t.p - theta * t.p_theta - rho * rho * t.eps_rho;
}

namespace {

void check_energy(const EosModel& eos, double rho, double eps) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    std::ostringstream os;
    os.precision(17);
    os << "density must be positive, got rho = " << rho;
    throw NonPhysicalStateError(os.str());
  }
  const double floor = eos.energy_floor(rho);
  if (!(eps > floor) || !std::isfinite(eps)) {
    std::ostringstream os;
    os.precision(17);
    os << "internal energy " << eps << " at rho = " << rho << " is not above the EOS floor "
       << floor << " (temperature would be non-positive)";
    throw NonPhysicalStateError(os.str());
  }
}

}  // namespace

double EosModel::invert_temperature(double rho, double eps) const {
  check_energy(*this, rho, eps);
  // Both built-in models are linear in theta at fixed rho.
  return std::visit(overloaded{[&](const IdealGas& g) { return eps / g.cv; },
                               [&](const VanDerWaalsGas& g) {
                                 if (!(g.b * rho < 1.0))
                                   throw NonPhysicalStateError(
                                       "density exceeds covolume limit 1/b");
                                 return (eps + g.a * rho) / g.cv;
                               }},
                    model_);
}

double EosModel::temperature_from_pressure(double rho, double p) const {
  const double theta = std::visit(
      overloaded{[&](const IdealGas& g) { return p / (rho * g.R); },
                 [&](const VanDerWaalsGas& g) {
                   return (p + g.a * rho * rho) * (1.0 - g.b * rho) / (rho * g.R);
                 }},
      model_);
  check_domain(rho, theta);
  return theta;
}

double EosModel::invert_temperature_newton(double rho, double eps) const {
  check_energy(*this, rho, eps);
  const double tol = 1e-12 * std::fmax(1.0, std::fabs(eps));

  // Bracket [lo, hi] with eps(lo) < eps <= eps(hi); eps is increasing in theta.
  double lo = 0.0;
  double hi = 1.0;
  int expand = 0;
  while (internal_energy(rho, hi) < eps) {
    lo = hi;
    hi *= 2.0;
    if (++expand > 2000) throw NonPhysicalStateError("temperature bracket expansion failed");
  }

  double theta = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const ThermoPoint t = evaluate(rho, theta);
    const double f = t.eps - eps;
    if (std::fabs(f) <= tol) return theta;
    if (f < 0.0)
      lo = theta;
    else
      hi = theta;
    double next = theta - f / t.eps_theta;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    theta = next;
  }
  const double f = internal_energy(rho, theta) - eps;
  if (std::fabs(f) <= tol) return theta;
  std::ostringstream os;
  os.precision(17);
  os << "temperature inversion did not converge in 50 iterations (rho = " << rho
     << ", eps = " << eps << ")";
  throw NonPhysicalStateError(os.str());
}

}  // namespace qmhd
