#include "roughflow/kirchhoff.hpp"

#include <cmath>
#include <stdexcept>

#include "roughflow/rng.hpp"

namespace roughflow {

Vec3 eval_field(const KirchhoffField& kf, double t, const Vec3& x) {
  if (t < 0) throw std::invalid_argument("eval_field: t must be >= 0");
  return integrate_sphere(kf.rule, [&](const Vec3& w) {
    Vec3 y = x + t * w;
    return kf.source.eval(y) + t * (kf.source.jac(y) * w);
  });
}

Vec3 eval_force(const KirchhoffField& kf, double t, const Vec3& x, const Vec3& v) {
  if (kf.mode == KirchhoffMode::ElectricOnly) return kf.nu(v) * eval_field(kf, t, x);
  Vec3 E = eval_field(kf, t, x);
  Vec3 B = integrate_sphere(kf.rule, [&](const Vec3& w) {
    Vec3 y = x + t * w;
    return kf.source_b.eval(y) + t * (kf.source_b.jac(y) * w);
  });
  return E + cross(rel_velocity(v), B);
}

double wave_op(const ScalarField3& g, const SphereRule& rule, double t, const Vec3& x) {
  if (t < 0) throw std::invalid_argument("wave_op: t must be >= 0");
  if (t == 0) return 0.0;
  return t * integrate_sphere(rule, [&](const Vec3& w) { return g.eval(x + t * w); });
}

double modified_wave_op(const ScalarField3& g, const SphereRule& rule, double t,
                        const Vec3& x, const Vec3& v) {
  if (t < 0) throw std::invalid_argument("modified_wave_op: t must be >= 0");
  Vec3 vhat = rel_velocity(v);
  // |vhat| < 1, so the denominator is bounded away from 0.
  return t * integrate_sphere(rule, [&](const Vec3& w) {
           return g.eval(x + t * w) / std::abs(dot(vhat, w) - 1.0);
         });
}

DispersionProfile dispersion_profile(const ScalarField3& g, const SphereRule& rule,
                                     const std::vector<double>& s_grid, int n_samples,
                                     unsigned long long seed) {
  DispersionProfile out;
  const double R = g.support_radius;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n_fit = 0;
  for (std::size_t k = 0; k < s_grid.size(); ++k) {
    double s = s_grid[k];
    if (s <= 0) throw std::invalid_argument("dispersion_profile: s must be positive");
    // For g supported in B(0,R) the spherical mean at radius s is supported
    // in the shell s-R <= |x| <= s+R.
    double lo = std::max(0.0, s - R), hi = s + R;
    double vol = 4.0 / 3.0 * 3.14159265358979323846 * (hi * hi * hi - lo * lo * lo);
    SplitRng rng(seed, k);
    double acc = 0;
    for (int i = 0; i < n_samples; ++i) {
      double u = rng.uniform();
      double r = std::cbrt(lo * lo * lo + u * (hi * hi * hi - lo * lo * lo));
      Vec3 x = r * rng.unit_vec3();
      double h = integrate_sphere(rule, [&](const Vec3& w) { return g.eval(x + s * w); });
      acc += h * h;
    }
    DispersionPoint pt;
    pt.s = s;
    pt.l2_norm = std::sqrt(vol * acc / n_samples);
    pt.under_resolved = n_samples < 100;
    out.points.push_back(pt);
    if (pt.l2_norm > 0) {
      double lx = std::log(s), ly = std::log(pt.l2_norm);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n_fit;
    }
  }
  if (n_fit >= 2) {
    double d = n_fit * sxx - sx * sx;
    out.slope = (n_fit * sxy - sx * sy) / d;
    out.intercept = (sy - out.slope * sx) / n_fit;
  }
  return out;
}

}  // namespace roughflow
