#include "qmhd/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qmhd {

double TrigSeries::value(const Vec3& x) const {
  double v = offset_;
  for (const auto& m : modes_) v += m.amplitude * std::sin(dot(m.wavevector, x) + m.phase);
  return v;
}

Vec3 TrigSeries::gradient(const Vec3& x) const {
  Vec3 g;
  for (const auto& m : modes_) g += (m.amplitude * std::cos(dot(m.wavevector, x) + m.phase)) * m.wavevector;
  return g;
}

Mat3 TrigSeries::hessian(const Vec3& x) const {
  Mat3 h;
  for (const auto& m : modes_)
    h += (-m.amplitude * std::sin(dot(m.wavevector, x) + m.phase)) * outer(m.wavevector, m.wavevector);
  return h;
}

void TrigSeries::check_commensurate(const Grid& grid) const {
  for (const auto& m : modes_) {
    if (m.amplitude == 0.0) continue;
    for (int a = 0; a < 3; ++a) {
      const double k = m.wavevector[a];
      if (a >= grid.dim()) {
        if (k != 0.0) throw ConfigError("manufactured mode varies along an absent axis");
        continue;
      }
      if (grid.boundary(a) != Boundary::periodic) continue;
      const double cycles = k * grid.length(a) / (2.0 * std::numbers::pi);
      if (std::fabs(cycles - std::round(cycles)) > 1e-9)
        throw ConfigError("manufactured wavevector is not commensurate with the periodic extent");
    }
  }
}

ScalarField TrigSeries::sample(const Grid& grid) const {
  ScalarField f(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) f[k] = value(grid.center(k));
  return f;
}

VectorField TrigSeries::sample_gradient(const Grid& grid) const {
  VectorField f(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) f[k] = gradient(grid.center(k));
  return f;
}

void ManufacturedState::check_commensurate(const Grid& grid) const {
  rho.check_commensurate(grid);
  theta.check_commensurate(grid);
  for (const auto& c : u) c.check_commensurate(grid);
  potential.check_commensurate(grid);
  b_z.check_commensurate(grid);
}

Vec3 ManufacturedState::magnetic_field(const Vec3& x) const {
  const Vec3 ga = potential.gradient(x);
  return b_mean + Vec3{ga[1], -ga[0], b_z.value(x)};
}

PointJet ManufacturedState::jet(const Vec3& x) const {
  PointJet j;
  j.rho = rho.value(x);
  j.theta = theta.value(x);
  j.grad_rho = rho.gradient(x);
  j.grad_theta = theta.gradient(x);
  for (int c = 0; c < 3; ++c) {
    j.u[c] = u[static_cast<std::size_t>(c)].value(x);
    const Vec3 g = u[static_cast<std::size_t>(c)].gradient(x);
    for (int i = 0; i < 3; ++i) j.grad_u(i, c) = g[i];
  }
  j.B = magnetic_field(x);
  const Mat3 ha = potential.hessian(x);
  const Vec3 gz = b_z.gradient(x);
  for (int i = 0; i < 3; ++i) {
    j.grad_B(i, 0) = ha(i, 1);
    j.grad_B(i, 1) = -ha(i, 0);
    j.grad_B(i, 2) = gz[i];
  }
  return j;
}

FieldState ManufacturedState::sample(const Grid& grid, bool discrete_curl) const {
  check_commensurate(grid);
  FieldState s(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3 x = grid.center(k);
    s.rho[k] = rho.value(x);
    s.theta[k] = theta.value(x);
    s.u[k] = Vec3{u[0].value(x), u[1].value(x), u[2].value(x)};
    s.B[k] = magnetic_field(x);
  }
  if (discrete_curl) {
    const VectorField ga = grad(grid, potential.sample(grid));
    for (std::size_t k = 0; k < grid.size(); ++k)
      s.B[k] = b_mean + Vec3{ga[k][1], -ga[k][0], b_z.value(grid.center(k))};
  }
  return s;
}

namespace {

struct Draw {
  std::mt19937_64 rng;
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
};

/// Random modes whose amplitudes sum (in absolute value) to `total`, with
/// `extra_factor` multiplying the per-mode amplitude by |k| for potentials
/// so that the derived field obeys the same bound.
TrigSeries random_series(Draw& d, const Grid& grid, double offset, double total,
                         const SamplerBounds& b, bool potential) {
  std::vector<TrigMode> modes;
  if (total <= 0.0 || b.modes <= 0) return TrigSeries(offset);
  std::vector<double> weights;
  double wsum = 0.0;
  for (int m = 0; m < b.modes; ++m) {
    TrigMode mode;
    for (int a = 0; a < grid.dim(); ++a) {
      const int n = d.integer(-b.max_wavenumber, b.max_wavenumber);
      mode.wavevector[a] = 2.0 * std::numbers::pi * n / grid.length(a);
    }
    if (norm2(mode.wavevector) == 0.0) mode.wavevector[0] = 2.0 * std::numbers::pi / grid.length(0);
    mode.phase = d.uniform(0.0, 2.0 * std::numbers::pi);
    const double w = d.uniform(0.2, 1.0);
    weights.push_back(w);
    wsum += w;
    modes.push_back(mode);
  }
  for (std::size_t m = 0; m < modes.size(); ++m) {
    double a = total * weights[m] / wsum;
    if (potential) a /= std::fmax(std::fabs(modes[m].wavevector[0]), std::fabs(modes[m].wavevector[1]));
    if (d.uniform(0.0, 1.0) < 0.5) a = -a;
    modes[m].amplitude = a;
  }
  return TrigSeries(offset, std::move(modes));
}

}  // namespace

ManufacturedState random_manufactured(std::uint64_t seed, const Grid& grid,
                                      const SamplerBounds& b) {
  Draw d{std::mt19937_64(seed)};
  const double amp = std::clamp(b.amplitude, 0.0, 1.0);
  ManufacturedState m;

  // Positive scalars: mean in the inner part of the range, perturbation at most
  // 40% of the mean and never below the lower bound.
  auto positive = [&](double lo, double hi) {
    const double mean = std::exp(d.uniform(std::log(std::fmax(lo * 2.0, lo)), std::log(hi / 1.5)));
    const double room = std::fmin(0.4 * mean, std::fmin(mean - lo, hi - mean));
    return random_series(d, grid, mean, amp * room, b, false);
  };
  m.rho = positive(b.rho_lo, b.rho_hi);
  m.theta = positive(b.theta_lo, b.theta_hi);

  // Each vector component is bounded by max/sqrt(3), split between mean and
  // perturbation so that |v| <= max.
  const double u_comp = b.u_max / std::sqrt(3.0);
  for (auto& c : m.u) {
    const double mean = d.uniform(-0.4, 0.4) * u_comp;
    c = random_series(d, grid, mean, amp * 0.6 * u_comp, b, false);
  }

  const double b_comp = b.b_max / std::sqrt(3.0);
  for (int c = 0; c < 3; ++c) m.b_mean[c] = d.uniform(-0.4, 0.4) * b_comp;
  // |d_x A|, |d_y A| <= 0.6 b_comp given the |k| normalisation above.
  m.potential = random_series(d, grid, 0.0, amp * 0.6 * b_comp, b, true);
  m.b_z = random_series(d, grid, 0.0, amp * 0.6 * b_comp, b, false);
  m.check_commensurate(grid);
  return m;
}

}  // namespace qmhd
