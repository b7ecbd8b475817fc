#pragma once

#include "roughflow/flow3d.hpp"
#include "roughflow/sphere_rule.hpp"

namespace roughflow {

// Backward-light-cone chart at a query point z: the unique (s, omega) with
// z = X_s - s*omega, plus the change-of-variables Jacobian and analytic
// z-derivatives.
struct ConeChart {
  double s = 0;
  Vec3 omega{};
  double jac = 0;       // s^2 |Xdot_s . omega - 1|
  Vec3 grad_s{};        // omega / (omega . Xdot_s - 1)
  Mat3 grad_omega{};    // (1/s) [ (Xdot_s - omega) (x) omega / (omega.Xdot_s - 1) - I ]
};

// Bisection on g(s) = |X_s - z| - s, strictly decreasing along any
// speed-bounded trajectory.  Throws DomainError if z lies outside
// B(X_T, T) or within 10*tol of the cone apex.
ConeChart invert_cone(const Trajectory& traj, const Vec3& z, double tol);

struct ConeDomainReport {
  double max_outward_violation = 0;  // max over forward samples of |Phi - X_t| - t
  double coverage_fraction = 0;      // invertible fraction of random ball points
};

// Checks both inclusions of O_X^t = B(X_t, t) numerically.
ConeDomainReport cone_domain_check(const Trajectory& traj, std::size_t t_index,
                                   int n_probe, const SphereRule& rule,
                                   std::uint64_t seed = 99);

struct GradCheckResult {
  double rel_err_s = 0;
  double rel_err_omega = 0;
};

// Analytic gradients vs central finite differences of invert_cone.
GradCheckResult grad_check(const Trajectory& traj, const Vec3& z, double h, double tol);

struct StabilityGap {
  double gap_s = 0, gap_omega = 0;
  double bound_ratio_s = 0, bound_ratio_omega = 0;
};

// Gaps |s_X - s_{X^d}|, |omega_X - omega_{X^d}| against the bounding
// quantities K max|X - X^d| and K max|X - X^d| (1/s_X + 1/s_{X^d}),
// K = sqrt(1 + v_max^2).
StabilityGap stability_gap(const PairedTrajectory& pair, const Vec3& z, double v_max,
                           double tol = 1e-10);

// Monte Carlo estimate of int_{B(X_t,t)} 1/J_X dz, which equals 4*pi*t.
double cone_volume_identity(const Trajectory& traj, std::size_t t_index, int n_samples,
                            std::uint64_t seed = 7);

}  // namespace roughflow
