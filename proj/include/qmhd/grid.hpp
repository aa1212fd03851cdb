#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qmhd/error.hpp"
#include "qmhd/tensor.hpp"

namespace qmhd {

enum class Boundary { periodic, transmissive };

std::string to_string(Boundary b);
Boundary parse_boundary(const std::string& s);

/// Uniform cell-centred Cartesian grid in one or two dimensions.
///
/// Cell (i, j) has centre lo + (i + 1/2) h along each axis and flat index
/// i + n[0] * j. Axes with index >= dim are degenerate: one cell, and every
/// derivative along them is identically zero.
class Grid {
 public:
  Grid(int dim, std::array<int, 2> cells, std::array<double, 2> lo, std::array<double, 2> hi,
       std::array<Boundary, 2> boundary, int stencil_order);

  /// Convenience 1D constructor.
  static Grid line(int cells, double lo, double hi, Boundary boundary, int stencil_order = 2);
  /// Convenience 2D constructor with the same settings on both axes.
  static Grid square(int cells, double lo, double hi, Boundary boundary, int stencil_order = 2);

  int dim() const noexcept { return dim_; }
  int cells(int axis) const noexcept { return n_[static_cast<std::size_t>(axis)]; }
  std::array<int, 2> extents() const noexcept { return n_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(n_[0]) * static_cast<std::size_t>(n_[1]);
  }
  double lo(int axis) const noexcept { return lo_[static_cast<std::size_t>(axis)]; }
  double hi(int axis) const noexcept { return hi_[static_cast<std::size_t>(axis)]; }
  double length(int axis) const noexcept { return hi(axis) - lo(axis); }
  double spacing(int axis) const noexcept { return h_[static_cast<std::size_t>(axis)]; }
  double min_spacing() const noexcept;
  double cell_volume() const noexcept;
  Boundary boundary(int axis) const noexcept { return bc_[static_cast<std::size_t>(axis)]; }
  int stencil_order() const noexcept { return order_; }
  int stencil_radius() const noexcept { return order_ / 2; }

  std::size_t index(int i, int j = 0) const noexcept {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_[0]) * static_cast<std::size_t>(j);
  }
  std::array<int, 2> ij(std::size_t idx) const noexcept {
    return {static_cast<int>(idx % static_cast<std::size_t>(n_[0])),
            static_cast<int>(idx / static_cast<std::size_t>(n_[0]))};
  }
  /// Cell-centre coordinates (x, y, 0); y = 0 on 1D grids.
  Vec3 center(std::size_t idx) const noexcept;

  /// Neighbour index `offset` cells away along `axis`: periodic wrap or
  /// clamped (zero-gradient ghost extension) for transmissive axes.
  std::size_t neighbour(std::size_t idx, int axis, int offset) const noexcept;

  bool operator==(const Grid&) const = default;

 private:
  int dim_;
  std::array<int, 2> n_;
  std::array<double, 2> lo_;
  std::array<double, 2> hi_;
  std::array<double, 2> h_;
  std::array<Boundary, 2> bc_;
  int order_;
};

/// Per-cell values on a grid with the given extents.
template <class T>
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& grid, T fill = T{})
      : extents_(grid.extents()), data_(grid.size(), fill) {}

  std::array<int, 2> extents() const noexcept { return extents_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool matches(const Grid& grid) const noexcept {
    return extents_ == grid.extents() && data_.size() == grid.size();
  }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  bool operator==(const Field&) const = default;

 private:
  std::array<int, 2> extents_{0, 0};
  std::vector<T> data_;
};

using ScalarField = Field<double>;
using VectorField = Field<Vec3>;
using TensorField = Field<Mat3>;

/// Throws ShapeError unless `f` was created on a grid shaped like `grid`.
template <class T>
void require_shape(const Grid& grid, const Field<T>& f, const char* what = "field") {
  if (!f.matches(grid))
    throw ShapeError(std::string(what) + " does not match the grid extents");
}

/// Cellwise map of one or more fields into a new field.
template <class R, class F, class... Ts>
Field<R> map_cells(const Grid& grid, F&& fn, const Field<Ts>&... in) {
  (require_shape(grid, in), ...);
  Field<R> out(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) out[k] = fn(in[k]...);
  return out;
}

// Central-difference operators. All return freshly allocated fields.

/// d/dx_axis with the grid's stencil order; identically zero for axis >= dim.
template <class T>
Field<T> partial(const Grid& grid, const Field<T>& f, int axis);

VectorField grad(const Grid& grid, const ScalarField& f);
ScalarField div(const Grid& grid, const VectorField& v);
/// (div T)_j = sum_i d_i T_ij (divergence over the first index).
VectorField div_tensor(const Grid& grid, const TensorField& t);
/// (grad v)_ij = d_i v_j.
TensorField grad_vec(const Grid& grid, const VectorField& v);
/// ((a·grad) v)_j = a_i d_i v_j.
VectorField convective(const Grid& grid, const VectorField& a, const VectorField& v);

double max_abs(const ScalarField& f);
double max_abs(const VectorField& f);
double sum(const ScalarField& f);
Vec3 sum(const VectorField& f);

}  // namespace qmhd
