#include "roughflow/lightcone.hpp"

#include <algorithm>
#include <cmath>

#include "roughflow/errors.hpp"
#include "roughflow/rng.hpp"

namespace roughflow {

namespace {
const double pi = 3.14159265358979323846;
}

ConeChart invert_cone(const Trajectory& traj, const Vec3& z, double tol) {
  if (tol <= 0) throw DomainError("invert_cone: tol must be positive");
  const double T = traj.horizon();
  auto g = [&](double s) { return norm(traj.position(s) - z) - s; };
  if (g(T) >= 0)
    throw DomainError("invert_cone: query point outside B(X_T, T)");
  // g is strictly decreasing (speed bound); locate the sign-change cell by
  // binary search over grid nodes, then bisect inside it.
  std::size_t lo_k = 0, hi_k = traj.steps();
  while (hi_k - lo_k > 1) {
    std::size_t mid = (lo_k + hi_k) / 2;
    if (norm(traj.X[mid] - z) - traj.dt * double(mid) >= 0)
      lo_k = mid;
    else
      hi_k = mid;
  }
  double lo = traj.dt * double(lo_k);
  double hi = std::min(T, traj.dt * double(hi_k));
  for (int it = 0; it < 200 && hi - lo > 0.25 * tol; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) >= 0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  if (s < 10 * tol) throw DomainError("invert_cone: query point at the cone apex");

  ConeChart chart;
  chart.s = s;
  chart.omega = (traj.position(s) - z) / s;
  double onorm = norm(chart.omega);
  if (onorm > 0) chart.omega = chart.omega / onorm;
  std::size_t cell = std::min(traj.steps() - 1, std::size_t(s / traj.dt));
  Vec3 xdot = traj.step_velocity(cell);
  double mu = dot(chart.omega, xdot) - 1.0;  // <= -(1 - |xdot|) < 0
  chart.jac = s * s * std::abs(mu);
  chart.grad_s = chart.omega / mu;
  chart.grad_omega =
      (1.0 / s) * ((1.0 / mu) * Mat3::outer(xdot - chart.omega, chart.omega) -
                   Mat3::identity());
  return chart;
}

ConeDomainReport cone_domain_check(const Trajectory& traj, std::size_t t_index,
                                   int n_probe, const SphereRule& rule,
                                   std::uint64_t seed) {
  ConeDomainReport rep;
  const double t = traj.dt * double(t_index);
  const Vec3 xt = traj.X[t_index];
  if (t_index == 0) {
    rep.coverage_fraction = 1.0;  // degenerate ball of radius 0
    return rep;
  }
  // (a) forward inclusion: every Phi(s, omega) sample lies in B(X_t, t).
  const int n_s = 64;
  for (int i = 0; i <= n_s; ++i) {
    double s = t * double(i) / n_s;
    Vec3 xs = traj.position(s);
    for (const Vec3& w : rule.nodes) {
      double viol = norm(xs - s * w - xt) - t;
      rep.max_outward_violation = std::max(rep.max_outward_violation, viol);
    }
  }
  // (b) reverse inclusion: random interior ball points are invertible.
  int ok = 0;
  double tol = 1e-10 * std::max(1.0, t);
  for (int i = 0; i < n_probe; ++i) {
    SplitRng rng(seed, std::uint64_t(i));
    double r = t * std::cbrt(rng.uniform()) * (1.0 - 1e-9);
    Vec3 z = xt + r * rng.unit_vec3();
    try {
      invert_cone(traj, z, tol);
      ++ok;
    } catch (const DomainError&) {
    }
  }
  rep.coverage_fraction = n_probe > 0 ? double(ok) / n_probe : 1.0;
  return rep;
}

GradCheckResult grad_check(const Trajectory& traj, const Vec3& z, double h, double tol) {
  ConeChart chart = invert_cone(traj, z, tol);
  Vec3 fd_s{};
  Mat3 fd_omega{};
  for (int j = 0; j < 3; ++j) {
    Vec3 zp = z, zm = z;
    zp[j] += h;
    zm[j] -= h;
    ConeChart cp = invert_cone(traj, zp, tol);
    ConeChart cm = invert_cone(traj, zm, tol);
    fd_s[j] = (cp.s - cm.s) / (2 * h);
    for (int i = 0; i < 3; ++i) fd_omega(i, j) = (cp.omega[i] - cm.omega[i]) / (2 * h);
  }
  GradCheckResult res;
  res.rel_err_s = norm(chart.grad_s - fd_s) / std::max(norm(fd_s), 1e-300);
  res.rel_err_omega =
      frobenius(chart.grad_omega - fd_omega) / std::max(frobenius(fd_omega), 1e-300);
  return res;
}

StabilityGap stability_gap(const PairedTrajectory& pair, const Vec3& z, double v_max,
                           double tol) {
  ConeChart a = invert_cone(pair.base, z, tol);
  ConeChart b = invert_cone(pair.shifted, z, tol);
  StabilityGap gap;
  gap.gap_s = std::abs(a.s - b.s);
  gap.gap_omega = norm(a.omega - b.omega);
  double s_min = std::min(a.s, b.s);
  double max_dx = 0;
  std::size_t k_max = std::min(pair.base.X.size() - 1, std::size_t(s_min / pair.base.dt) + 1);
  for (std::size_t k = 0; k <= k_max; ++k)
    max_dx = std::max(max_dx, norm(pair.base.X[k] - pair.shifted.X[k]));
  double K = std::sqrt(1.0 + v_max * v_max);
  double bound_s = K * max_dx;
  double bound_omega = K * max_dx * (1.0 / a.s + 1.0 / b.s);
  gap.bound_ratio_s = bound_s > 0 ? gap.gap_s / bound_s : 0.0;
  gap.bound_ratio_omega = bound_omega > 0 ? gap.gap_omega / bound_omega : 0.0;
  return gap;
}

double cone_volume_identity(const Trajectory& traj, std::size_t t_index, int n_samples,
                            std::uint64_t seed) {
  const double t = traj.dt * double(t_index);
  const Vec3 xt = traj.X[t_index];
  const Vec3 x0 = traj.X[0];
  const double vol = 4.0 / 3.0 * pi * t * t * t;
  // 1/J_X ~ 1/s^2 near the apex z = X_0, so plain uniform sampling has
  // unbounded variance.  Use a half-uniform, half-apex-concentrated mixture
  // with density q and the unbiased estimator mean(f/q).
  const double r_apex = t;
  auto density = [&](const Vec3& z) {
    double q = 0.5 / vol;  // uniform part; all samples lie inside the ball
    double d2 = norm2(z - x0);
    if (d2 < r_apex * r_apex && d2 > 0)
      q += 0.5 / (4.0 * pi * r_apex * d2);  // radius-uniform around the apex
    return q;
  };
  double acc = 0;
  double tol = 1e-11 * std::max(1.0, t);
  for (int i = 0; i < n_samples; ++i) {
    SplitRng rng(seed, std::uint64_t(i));
    Vec3 z;
    if (rng.uniform() < 0.5) {
      z = xt + (t * std::cbrt(rng.uniform())) * rng.unit_vec3();
    } else {
      z = x0 + (r_apex * rng.uniform()) * rng.unit_vec3();
      if (norm(z - xt) >= t) continue;  // outside the ball: integrand is 0
    }
    try {
      ConeChart c = invert_cone(traj, z, tol);
      acc += 1.0 / (c.jac * density(z));
    } catch (const DomainError&) {
      // within 10*tol of the apex; measure-zero contribution
    }
  }
  return acc / double(n_samples);
}

}  // namespace roughflow
