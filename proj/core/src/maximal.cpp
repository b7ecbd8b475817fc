#include "roughflow/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "roughflow/errors.hpp"

namespace roughflow {

namespace {
const double four_pi = 4.0 * 3.14159265358979323846;

bool sphere_inside(const GridField3& g, const Vec3& x, double r) {
  Vec3 hi = g.upper_corner();
  return x.x - r >= g.origin.x && x.y - r >= g.origin.y && x.z - r >= g.origin.z &&
         x.x + r <= hi.x && x.y + r <= hi.y && x.z + r <= hi.z;
}

double spherical_average(const GridField3& g, const Vec3& x, double r,
                         const SphereRule& rule) {
  double acc = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * std::abs(g.sample(x + r * rule.nodes[i]));
  return acc / four_pi;
}
}  // namespace

std::vector<double> geometric_grid(double r_min, double r_max, double ratio) {
  std::vector<double> out;
  for (double r = r_min; r <= r_max * (1 + 1e-12); r *= ratio) out.push_back(r);
  return out;
}

MaxResult spherical_max(const GridField3& g, const Vec3& x,
                        const std::vector<double>& r_grid, const SphereRule& rule) {
  MaxResult res;
  std::size_t best = r_grid.size();
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!sphere_inside(g, x, r_grid[i])) {
      res.skipped_radii = true;
      continue;
    }
    double v = spherical_average(g, x, r_grid[i], rule);
    if (v > res.value) {
      res.value = v;
      res.argmax_radius = r_grid[i];
      best = i;
    }
  }
  if (best == r_grid.size()) return res;
  // local refinement between the grid neighbors of the argmax
  double lo = best > 0 ? r_grid[best - 1] : r_grid[best];
  double hi = best + 1 < r_grid.size() ? r_grid[best + 1] : r_grid[best];
  for (int round = 0; round < 2; ++round) {
    double step = (hi - lo) / 4.0;
    if (step <= 0) break;
    double best_r = res.argmax_radius;
    for (int k = 0; k <= 4; ++k) {
      double r = lo + step * k;
      if (!sphere_inside(g, x, r)) continue;
      double v = spherical_average(g, x, r, rule);
      if (v > res.value) {
        res.value = v;
        best_r = r;
      }
    }
    lo = std::max(lo, best_r - step);
    hi = std::min(hi, best_r + step);
    res.argmax_radius = best_r;
  }
  return res;
}

MaxResult shell_max(const GridField3& g, const Vec3& x,
                    const std::vector<double>& eps_grid, int eta_per_eps,
                    const SphereRule& rule, int n_radial) {
  MaxResult res;
  std::vector<double> gl_nodes, gl_weights;
  gauss_legendre(n_radial, gl_nodes, gl_weights);
  if (int(rule.size()) * n_radial < 50) res.under_resolved = true;
  for (double eps : eps_grid) {
    if (!sphere_inside(g, x, eps)) {
      res.skipped_radii = true;
      continue;
    }
    double eta = eps;
    for (int j = 0; j < eta_per_eps; ++j, eta *= 0.5) {
      // int_{eps-eta}^{eps} r^2 (oint |g| dS) dr / (eps^2 eta)
      double a = eps - eta, b = eps;
      double acc = 0;
      for (int q = 0; q < n_radial; ++q) {
        double r = 0.5 * (a + b) + 0.5 * (b - a) * gl_nodes[q];
        double w = 0.5 * (b - a) * gl_weights[q];
        acc += w * r * r * spherical_average(g, x, r, rule) * four_pi;
      }
      double v = acc / (eps * eps * eta);
      if (v > res.value) {
        res.value = v;
        res.argmax_radius = eps;
      }
    }
  }
  return res;
}

double pair_max(const GridField3& g, const Vec3& x, double radius, double delta,
                const SphereRule& rule, int n_radial) {
  if (delta <= 0) throw NumericalError("pair_max: delta must be positive");
  if (radius <= 0) return 0.0;
  std::vector<double> gl_nodes, gl_weights;
  gauss_legendre(n_radial, gl_nodes, gl_weights);
  double acc = 0;
  for (int q = 0; q < n_radial; ++q) {
    double r = 0.5 * radius * (1.0 + gl_nodes[q]);
    double w = 0.5 * radius * gl_weights[q];
    acc += w * spherical_average(g, x, r, rule) * four_pi;
  }
  return acc / (delta + radius);
}

std::vector<double> lp_operator_norm_scan(const PointOperator& op,
                                          const std::vector<GridField3>& fields, double p,
                                          int stride) {
  if (p < 1) throw NumericalError("lp_operator_norm_scan: p must be >= 1");
  std::vector<double> ratios;
  for (const GridField3& g : fields) {
    double in_acc = 0, out_acc = 0;
    for (std::int64_t k = 0; k < g.nz; k += stride)
      for (std::int64_t j = 0; j < g.ny; j += stride)
        for (std::int64_t i = 0; i < g.nx; i += stride) {
          Vec3 x = g.origin + g.spacing * Vec3{double(i), double(j), double(k)};
          in_acc += std::pow(std::abs(g.at(i, j, k)), p);
          out_acc += std::pow(std::abs(op(g, x)), p);
        }
    if (in_acc <= 0)
      throw NumericalError("lp_operator_norm_scan: zero-norm input field");
    ratios.push_back(std::pow(out_acc / in_acc, 1.0 / p));
  }
  return ratios;
}

}  // namespace roughflow
