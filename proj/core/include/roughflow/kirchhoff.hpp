#pragma once

#include <functional>
#include <vector>

#include "roughflow/field.hpp"
#include "roughflow/sphere_rule.hpp"

namespace roughflow {

enum class KirchhoffMode { ElectricOnly, Lorentz };

// Wave-propagated force field
//   F(t,x) = int_{S^2} F0(x+t w) dw  +  t int_{S^2} (w . grad) F0(x+t w) dw,
// the expanded time derivative of t times the spherical mean of F0.  In
// Lorentz mode a paired magnetic source contributes E + vxB; in
// electric-only mode the result is modulated by nu(v).
struct KirchhoffField {
  VectorField3 source;                       // E0 (or F0)
  VectorField3 source_b;                     // B0, Lorentz mode only
  SphereRule rule;
  std::function<double(const Vec3&)> nu;     // default: identically 1
  KirchhoffMode mode = KirchhoffMode::ElectricOnly;

  KirchhoffField(VectorField3 src, SphereRule r)
      : source(std::move(src)), rule(std::move(r)), nu([](const Vec3&) { return 1.0; }) {}
};

// The propagated field at (t,x) before any velocity modulation; at t=0 this
// is 4*pi*F0(x).
Vec3 eval_field(const KirchhoffField& kf, double t, const Vec3& x);

// Full force on a particle with velocity variable v (nu- or Lorentz-coupled).
Vec3 eval_force(const KirchhoffField& kf, double t, const Vec3& x, const Vec3& v);

// W g(t,x) = t * int_{S^2} g(x+t w) dw
double wave_op(const ScalarField3& g, const SphereRule& rule, double t, const Vec3& x);

// Wtilde: t * int_{S^2} g(x+t w)/|vhat.w - 1| dw with vhat = v/sqrt(1+|v|^2).
double modified_wave_op(const ScalarField3& g, const SphereRule& rule, double t,
                        const Vec3& x, const Vec3& v);

struct DispersionPoint {
  double s;
  double l2_norm;
  bool under_resolved = false;
};

struct DispersionProfile {
  std::vector<DispersionPoint> points;
  double slope = 0;      // least-squares slope of log(norm) vs log(s)
  double intercept = 0;
};

// Monte Carlo L2 norm over the support shell of x -> int_{S^2} g(x+s w) dw
// for each s; g must be compactly supported (support_radius finite).
DispersionProfile dispersion_profile(const ScalarField3& g, const SphereRule& rule,
                                     const std::vector<double>& s_grid,
                                     int n_samples, unsigned long long seed = 1234);

}  // namespace roughflow
