#pragma once

#include <array>
#include <cmath>

namespace qmhd {

/// Three-component vector. Vectors always carry three components regardless
/// of the grid dimension, so transverse velocity and field survive on 1D grids.
struct Vec3 {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : c{x, y, z} {}

  constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  constexpr Vec3& operator+=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) (*this)[i] += o[i];
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) (*this)[i] -= o[i];
    return *this;
  }
  constexpr Vec3& operator*=(double a) {
    for (auto& v : c) v *= a;
    return *this;
  }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(Vec3 a) { return a *= -1.0; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
constexpr double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline double max_abs(const Vec3& a) {
  return std::fmax(std::fabs(a[0]), std::fmax(std::fabs(a[1]), std::fabs(a[2])));
}

/// 3x3 tensor stored row-major; T(i, j) with i the first (divergence) index.
struct Mat3 {
  std::array<double, 9> c{};

  constexpr double& operator()(int i, int j) { return c[static_cast<std::size_t>(3 * i + j)]; }
  constexpr double operator()(int i, int j) const {
    return c[static_cast<std::size_t>(3 * i + j)];
  }

  constexpr Mat3& operator+=(const Mat3& o) {
    for (std::size_t k = 0; k < 9; ++k) c[k] += o.c[k];
    return *this;
  }
  constexpr Mat3& operator-=(const Mat3& o) {
    for (std::size_t k = 0; k < 9; ++k) c[k] -= o.c[k];
    return *this;
  }
  constexpr Mat3& operator*=(double a) {
    for (auto& v : c) v *= a;
    return *this;
  }
  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;

  static constexpr Mat3 identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
};

constexpr Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
constexpr Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
constexpr Mat3 operator*(double s, Mat3 a) { return a *= s; }
constexpr Mat3 operator*(Mat3 a, double s) { return a *= s; }

/// (a ⊗ b)_ij = a_i b_j
constexpr Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a[i] * b[j];
  return m;
}

/// a ⊗ b − b ⊗ a, antisymmetric to the last bit.
constexpr Mat3 wedge(const Vec3& a, const Vec3& b) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = i == j ? 0.0 : a[i] * b[j] - b[i] * a[j];
  return m;
}

constexpr Mat3 transpose(const Mat3& a) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a(j, i);
  return m;
}

constexpr double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

/// Full contraction A : B = A_ij B_ij.
constexpr double contract(const Mat3& a, const Mat3& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < 9; ++k) s += a.c[k] * b.c[k];
  return s;
}

/// (T v)_i = T_ij v_j, i.e. (a ⊗ b) v = (b · v) a.
constexpr Vec3 apply(const Mat3& t, const Vec3& v) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = t(i, 0) * v[0] + t(i, 1) * v[1] + t(i, 2) * v[2];
  return r;
}

/// (v T)_j = v_i T_ij. With T = ∇a this is the convective derivative (v·∇)a.
constexpr Vec3 apply_left(const Vec3& v, const Mat3& t) {
  Vec3 r;
  for (int j = 0; j < 3; ++j) r[j] = v[0] * t(0, j) + v[1] * t(1, j) + v[2] * t(2, j);
  return r;
}

inline double max_abs(const Mat3& a) {
  double m = 0.0;
  for (double v : a.c) m = std::fmax(m, std::fabs(v));
  return m;
}

}  // namespace qmhd
