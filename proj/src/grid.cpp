#include "qmhd/grid.hpp"

#include <algorithm>
#include <cmath>

namespace qmhd {

std::string to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "transmissive";
}

Boundary parse_boundary(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "transmissive") return Boundary::transmissive;
  throw ConfigError("unknown boundary '" + s + "' (expected periodic or transmissive)");
}

Grid::Grid(int dim, std::array<int, 2> cells, std::array<double, 2> lo, std::array<double, 2> hi,
           std::array<Boundary, 2> boundary, int stencil_order)
    : dim_(dim), n_(cells), lo_(lo), hi_(hi), h_{1.0, 1.0}, bc_(boundary), order_(stencil_order) {
  if (dim != 1 && dim != 2) throw ConfigError("grid dimension must be 1 or 2");
  if (stencil_order != 2 && stencil_order != 4) throw ConfigError("stencil order must be 2 or 4");
  if (dim == 1) {
    n_[1] = 1;
    lo_[1] = 0.0;
    hi_[1] = 1.0;
    bc_[1] = Boundary::periodic;
  }
  for (int a = 0; a < dim; ++a) {
    const auto k = static_cast<std::size_t>(a);
    if (n_[k] < 2 * stencil_order)
      throw ConfigError("grid needs at least 2*stencil_order cells per axis");
    if (!(hi_[k] > lo_[k]) || !std::isfinite(hi_[k] - lo_[k]))
      throw ConfigError("grid extent must satisfy hi > lo");
    h_[k] = (hi_[k] - lo_[k]) / n_[k];
  }
  if (dim == 1) h_[1] = hi_[1] - lo_[1];
}

Grid Grid::line(int cells, double lo, double hi, Boundary boundary, int stencil_order) {
  return Grid(1, {cells, 1}, {lo, 0.0}, {hi, 1.0}, {boundary, Boundary::periodic}, stencil_order);
}

Grid Grid::square(int cells, double lo, double hi, Boundary boundary, int stencil_order) {
  return Grid(2, {cells, cells}, {lo, lo}, {hi, hi}, {boundary, boundary}, stencil_order);
}

double Grid::min_spacing() const noexcept {
  return dim_ == 1 ? h_[0] : std::min(h_[0], h_[1]);
}

double Grid::cell_volume() const noexcept { return dim_ == 1 ? h_[0] : h_[0] * h_[1]; }

Vec3 Grid::center(std::size_t idx) const noexcept {
  const auto [i, j] = ij(idx);
  Vec3 x;
  x[0] = lo_[0] + (i + 0.5) * h_[0];
  if (dim_ == 2) x[1] = lo_[1] + (j + 0.5) * h_[1];
  return x;
}

std::size_t Grid::neighbour(std::size_t idx, int axis, int offset) const noexcept {
  auto [i, j] = ij(idx);
  int& k = axis == 0 ? i : j;
  const int n = n_[static_cast<std::size_t>(axis)];
  k += offset;
  if (bc_[static_cast<std::size_t>(axis)] == Boundary::periodic)
    k = ((k % n) + n) % n;
  else
    k = std::clamp(k, 0, n - 1);
  return index(i, j);
}

template <class T>
Field<T> partial(const Grid& grid, const Field<T>& f, int axis) {
  require_shape(grid, f);
  Field<T> out(grid);
  if (axis >= grid.dim()) return out;

  const double h = grid.spacing(axis);
  const std::size_t n = grid.size();
  if (grid.stencil_order() == 2) {
    const double c1 = 1.0 / (2.0 * h);
    for (std::size_t k = 0; k < n; ++k) {
      T d = f[grid.neighbour(k, axis, 1)];
      d -= f[grid.neighbour(k, axis, -1)];
      d *= c1;
      out[k] = d;
    }
  } else {
    const double c1 = 8.0 / (12.0 * h);
    const double c2 = 1.0 / (12.0 * h);
    for (std::size_t k = 0; k < n; ++k) {
      T near = f[grid.neighbour(k, axis, 1)];
      near -= f[grid.neighbour(k, axis, -1)];
      T far = f[grid.neighbour(k, axis, 2)];
      far -= f[grid.neighbour(k, axis, -2)];
      near *= c1;
      far *= c2;
      near -= far;
      out[k] = near;
    }
  }
  return out;
}

template ScalarField partial<double>(const Grid&, const ScalarField&, int);
template VectorField partial<Vec3>(const Grid&, const VectorField&, int);
template TensorField partial<Mat3>(const Grid&, const TensorField&, int);

namespace {

ScalarField component(const Grid& grid, const VectorField& v, int c) {
  return map_cells<double>(grid, [c](const Vec3& a) { return a[c]; }, v);
}

}  // namespace

VectorField grad(const Grid& grid, const ScalarField& f) {
  VectorField out(grid);
  for (int a = 0; a < grid.dim(); ++a) {
    const ScalarField d = partial(grid, f, a);
    for (std::size_t k = 0; k < grid.size(); ++k) out[k][a] = d[k];
  }
  return out;
}

ScalarField div(const Grid& grid, const VectorField& v) {
  require_shape(grid, v);
  ScalarField out(grid);
  for (int a = 0; a < grid.dim(); ++a) {
    const ScalarField d = partial(grid, component(grid, v, a), a);
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] += d[k];
  }
  return out;
}

VectorField div_tensor(const Grid& grid, const TensorField& t) {
  require_shape(grid, t);
  VectorField out(grid);
  for (int a = 0; a < grid.dim(); ++a) {
    // Row a of T, differentiated along axis a.
    const VectorField row =
        map_cells<Vec3>(grid, [a](const Mat3& m) { return Vec3{m(a, 0), m(a, 1), m(a, 2)}; }, t);
    const VectorField d = partial(grid, row, a);
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] += d[k];
  }
  return out;
}

TensorField grad_vec(const Grid& grid, const VectorField& v) {
  TensorField out(grid);
  for (int a = 0; a < grid.dim(); ++a) {
    const VectorField d = partial(grid, v, a);
    for (std::size_t k = 0; k < grid.size(); ++k)
      for (int j = 0; j < 3; ++j) out[k](a, j) = d[k][j];
  }
  return out;
}

VectorField convective(const Grid& grid, const VectorField& a, const VectorField& v) {
  const TensorField g = grad_vec(grid, v);
  return map_cells<Vec3>(grid, [](const Vec3& x, const Mat3& m) { return apply_left(x, m); }, a, g);
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f) m = std::fmax(m, std::fabs(v));
  return m;
}

double max_abs(const VectorField& f) {
  double m = 0.0;
  for (const Vec3& v : f) m = std::fmax(m, max_abs(v));
  return m;
}

double sum(const ScalarField& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s;
}

Vec3 sum(const VectorField& f) {
  Vec3 s;
  for (const Vec3& v : f) s += v;
  return s;
}

}  // namespace qmhd
