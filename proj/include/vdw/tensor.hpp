#pragma once

#include <array>
#include <cmath>

namespace vdw {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  friend Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator+(const Vec3 &a, const Vec3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator*(double s, const Vec3 &a) { return {s * a.x, s * a.y, s * a.z}; }
};

// Row-major 3x3 tensor.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  double &operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  static Mat3 identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r(i, i) = 1.0;
    return r;
  }
  // Dyadic product a b.
  static Mat3 outer(const Vec3 &a, const Vec3 &b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
    return r;
  }
  // Matrix of v -> e x v; equals both e x I and I x e.
  static Mat3 cross(const Vec3 &e) {
    Mat3 r;
    r(0, 1) = -e.z;
    r(0, 2) = e.y;
    r(1, 0) = e.z;
    r(1, 2) = -e.x;
    r(2, 0) = -e.y;
    r(2, 1) = e.x;
    return r;
  }

  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = m[j][i];
    return r;
  }
  double trace() const { return m[0][0] + m[1][1] + m[2][2]; }

  friend Mat3 operator*(const Mat3 &a, const Mat3 &b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r(i, j) += a(i, k) * b(k, j);
    return r;
  }
  friend Mat3 operator*(double s, Mat3 a) {
    for (auto &row : a.m)
      for (auto &v : row) v *= s;
    return a;
  }
  friend Mat3 operator+(Mat3 a, const Mat3 &b) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) += b(i, j);
    return a;
  }
  friend Mat3 operator-(Mat3 a, const Mat3 &b) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) -= b(i, j);
    return a;
  }
};

} // namespace vdw
