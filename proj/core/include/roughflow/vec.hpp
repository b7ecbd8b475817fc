#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace roughflow {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline bool finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Row-major 3x3 matrix; just enough for cone-chart gradients.
struct Mat3 {
  std::array<double, 9> m{};
  double& operator()(int r, int c) { return m[3 * r + c]; }
  double operator()(int r, int c) const { return m[3 * r + c]; }

  static Mat3 identity() {
    Mat3 out;
    out(0, 0) = out(1, 1) = out(2, 2) = 1.0;
    return out;
  }
  static Mat3 outer(const Vec3& a, const Vec3& b) {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) out(r, c) = a[r] * b[c];
    return out;
  }
};

inline Mat3 operator+(Mat3 a, const Mat3& b) {
  for (int i = 0; i < 9; ++i) a.m[i] += b.m[i];
  return a;
}
inline Mat3 operator-(Mat3 a, const Mat3& b) {
  for (int i = 0; i < 9; ++i) a.m[i] -= b.m[i];
  return a;
}
inline Mat3 operator*(double s, Mat3 a) {
  for (int i = 0; i < 9; ++i) a.m[i] *= s;
  return a;
}
inline Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
          m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}
inline double frobenius(const Mat3& m) {
  double s = 0;
  for (double e : m.m) s += e * e;
  return std::sqrt(s);
}

// Relativistic velocity map v -> v/sqrt(1+|v|^2); always sub-luminal.
inline Vec3 rel_velocity(const Vec3& v) { return v / std::sqrt(1.0 + norm2(v)); }

}  // namespace roughflow
