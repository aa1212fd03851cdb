#pragma once

#include <cstdint>
#include <vector>

#include "qmhd/state.hpp"

namespace qmhd {

/// One term a * sin(k · x + phase).
struct TrigMode {
  double amplitude = 0.0;
  Vec3 wavevector;
  double phase = 0.0;
};

/// offset + sum of sine modes, with analytic derivatives of all orders.
class TrigSeries {
 public:
  TrigSeries() = default;
  explicit TrigSeries(double offset, std::vector<TrigMode> modes = {})
      : offset_(offset), modes_(std::move(modes)) {}

  double offset() const noexcept { return offset_; }
  const std::vector<TrigMode>& modes() const noexcept { return modes_; }

  double value(const Vec3& x) const;
  Vec3 gradient(const Vec3& x) const;
  /// H(i, j) = d_i d_j f
  Mat3 hessian(const Vec3& x) const;

  /// Throws ConfigError if a mode is not periodic on every periodic axis of
  /// the grid, or varies along an absent axis.
  void check_commensurate(const Grid& grid) const;

  ScalarField sample(const Grid& grid) const;
  VectorField sample_gradient(const Grid& grid) const;

 private:
  double offset_ = 0.0;
  std::vector<TrigMode> modes_;
};

/// Values and first derivatives of the primitive fields at one point.
struct PointJet {
  double rho = 1.0;
  double theta = 1.0;
  Vec3 u;
  Vec3 B;
  Vec3 grad_rho;
  Vec3 grad_theta;
  Mat3 grad_u;  ///< (i, j) = d_i u_j
  Mat3 grad_B;  ///< (i, j) = d_i B_j
};

/// Smooth analytic state. The magnetic field is
///   B = b_mean + (d_y A, −d_x A, 0) + (0, 0, b_z)
/// for a scalar potential A, hence divergence-free on any dimension.
struct ManufacturedState {
  TrigSeries rho;
  TrigSeries theta;
  std::array<TrigSeries, 3> u;
  Vec3 b_mean;
  TrigSeries potential;
  TrigSeries b_z;

  void check_commensurate(const Grid& grid) const;

  PointJet jet(const Vec3& x) const;
  Vec3 magnetic_field(const Vec3& x) const;

  /// Samples onto the grid. With `discrete_curl`, B is built from the grid's
  /// own difference operators applied to the sampled potential, so the
  /// discrete divergence of B vanishes to round-off.
  FieldState sample(const Grid& grid, bool discrete_curl = false) const;
};

/// Bounds for randomly generated states.
struct SamplerBounds {
  double rho_lo = 0.1, rho_hi = 10.0;
  double theta_lo = 0.1, theta_hi = 10.0;
  double u_max = 5.0;   ///< bound on |u|
  double b_max = 5.0;   ///< bound on |B|
  int max_wavenumber = 2;
  int modes = 2;
  double amplitude = 1.0;  ///< scales all perturbations; 0 gives a uniform state
};

/// Random trigonometric state, periodic on the box [lo, hi)^dim of `grid`.
/// Values are guaranteed to stay within `bounds` everywhere.
ManufacturedState random_manufactured(std::uint64_t seed, const Grid& grid,
                                      const SamplerBounds& bounds = {});

}  // namespace qmhd
