#include "roughflow/sphere_rule.hpp"

#include <cmath>

namespace roughflow {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

SphereRule build_rule(int order) {
  if (order < 2)
    throw std::invalid_argument(
        "build_rule: unsupported order " + std::to_string(order) +
        "; supported orders are all integers >= 2");
  const double pi = 3.14159265358979323846;
  const int n_theta = (order + 2) / 2;  // GL(n) exact through degree 2n-1 >= order
  const int n_phi = order + 1;          // uniform grid exact for harmonics e^{ik phi}, |k| <= order

  std::vector<double> mu, wmu;
  gauss_legendre(n_theta, mu, wmu);

  SphereRule rule;
  rule.order = order;
  rule.nodes.reserve(std::size_t(n_theta) * n_phi);
  rule.weights.reserve(std::size_t(n_theta) * n_phi);
  const double wphi = 2.0 * pi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double c = mu[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = wphi * j;
      rule.nodes.push_back({s * std::cos(phi), s * std::sin(phi), c});
      rule.weights.push_back(wmu[i] * wphi);
    }
  }
  return rule;
}

}  // namespace roughflow
