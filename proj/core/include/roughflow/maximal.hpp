#pragma once

#include <functional>
#include <vector>

#include "roughflow/field.hpp"
#include "roughflow/sphere_rule.hpp"

namespace roughflow {

struct MaxResult {
  double value = 0;
  double argmax_radius = 0;
  bool skipped_radii = false;   // some spheres exited the grid domain
  bool under_resolved = false;  // shell sample count below threshold
};

// Geometric grid {r_min * ratio^k} up to r_max, inclusive endpoint.
std::vector<double> geometric_grid(double r_min, double r_max, double ratio = 1.1);

// M_S g(x): max over r_grid (plus local 3-point refinement around the
// discrete argmax) of the spherical average of |g| at radius r.
MaxResult spherical_max(const GridField3& g, const Vec3& x,
                        const std::vector<double>& r_grid, const SphereRule& rule);

// Mtilde g(x) = sup_{eta <= eps} 1/(eps^2 eta) * integral over the shell
// eps-eta <= |z-x| <= eps of |g|.  eta runs over {eps/2^j : j < eta_per_eps}.
// Shell integrals use radial Gauss-Legendre x SphereRule quadrature.
MaxResult shell_max(const GridField3& g, const Vec3& x,
                    const std::vector<double>& eps_grid, int eta_per_eps,
                    const SphereRule& rule, int n_radial = 4);

// Pair-adapted operator: (|delta| + R)^{-1} * int_{B(x,R)} |g(z)| / |z-x|^2 dz,
// evaluated in spherical coordinates (the r^2 weight cancels the kernel).
double pair_max(const GridField3& g, const Vec3& x, double radius, double delta,
                const SphereRule& rule, int n_radial = 8);

using PointOperator = std::function<double(const GridField3&, const Vec3&)>;

// Grid Riemann-sum ||op g||_p / ||g||_p, both norms on the same strided
// evaluation grid.  Throws NumericalError on zero-norm input.
std::vector<double> lp_operator_norm_scan(const PointOperator& op,
                                          const std::vector<GridField3>& fields, double p,
                                          int stride = 1);

}  // namespace roughflow
