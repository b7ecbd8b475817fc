#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "roughflow/vec.hpp"

namespace roughflow {

enum class FieldKind { Analytic, GridInterpolated };

// Evaluable scalar field on R^3 with gradient access.  Evaluator returns 0
// outside the support radius.
struct ScalarField3 {
  std::function<double(const Vec3&)> eval;
  std::function<Vec3(const Vec3&)> grad;
  double support_radius = 0.0;
  FieldKind kind = FieldKind::Analytic;

  double operator()(const Vec3& x) const { return eval(x); }
};

// Vector-valued field (component-wise ScalarField3 semantics) with the
// 3x3 Jacobian d eval_i / d x_j.
struct VectorField3 {
  std::function<Vec3(const Vec3&)> eval;
  std::function<Mat3(const Vec3&)> jac;
  double support_radius = 0.0;
  FieldKind kind = FieldKind::Analytic;

  Vec3 operator()(const Vec3& x) const { return eval(x); }
};

// Uniform grid samples, row-major with x fastest: idx = (iz*ny + iy)*nx + ix.
struct GridField3 {
  std::int64_t nx = 0, ny = 0, nz = 0;
  Vec3 origin{};
  double spacing = 1.0;

  std::vector<double> samples;

  double at(std::int64_t ix, std::int64_t iy, std::int64_t iz) const {
    return samples[std::size_t((iz * ny + iy) * nx + ix)];
  }
  // Trilinear interpolation, 0 outside the grid box.
  double sample(const Vec3& x) const;
  // Analytic gradient of the trilinear interpolant (piecewise constant per
  // cell in each axis); one-sided at cell faces.
  Vec3 gradient(const Vec3& x) const;

  Vec3 upper_corner() const {
    return origin + Vec3{spacing * double(nx - 1), spacing * double(ny - 1),
                         spacing * double(nz - 1)};
  }
  bool inside(const Vec3& x) const;

  ScalarField3 as_field() const;
};

// Fill a grid from an analytic function.
GridField3 make_grid(std::function<double(const Vec3&)> f, Vec3 origin, double spacing,
                     std::int64_t nx, std::int64_t ny, std::int64_t nz);

// --- Stock test fields -----------------------------------------------------

ScalarField3 gaussian_bump(Vec3 center, double width, double amplitude);
ScalarField3 ball_indicator(Vec3 center, double radius);

// Smooth compactly-flavored vector field for flow tests: superposition of
// Gaussian bumps with fixed directions.  Divergence-free in phase space by
// construction (force depends on x only).
VectorField3 smooth_gaussian_force();

// Rough L^1 (intersect) L^2 field: a fixed multi-scale sum of truncated
// inverse-distance bumps a_j * min(M_j, 1/|x-x_j|) with shrinking supports,
// scalar and vector (bump direction) versions.  Unbounded-looking locally,
// square integrable globally.
ScalarField3 rough_field();
VectorField3 rough_vector_field();

// Grid L^p norm by Riemann sum (cell volume = spacing^3).
double grid_lp_norm(const GridField3& g, double p);

}  // namespace roughflow
