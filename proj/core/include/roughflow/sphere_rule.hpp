#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "roughflow/vec.hpp"

namespace roughflow {

// Quadrature rule on the unit sphere S^2.  Product of Gauss-Legendre in
// cos(theta) and a uniform (trapezoidal) grid in phi; integrates all
// polynomials of degree <= order exactly.  Immutable after construction.
struct SphereRule {
  std::vector<Vec3> nodes;
  std::vector<double> weights;  // sum to 4*pi
  int order = 0;

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre nodes/weights on [-1,1], n points (degree 2n-1 exact).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// order >= 2 required; throws std::invalid_argument otherwise.
SphereRule build_rule(int order);

// Sum_i w_i f(omega_i); throws std::runtime_error naming the node if f
// returns a non-finite value.
template <class F>
auto integrate_sphere(const SphereRule& rule, F&& f) {
  using R = decltype(f(Vec3{}));
  R acc{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    R v = f(rule.nodes[i]);
    bool ok;
    if constexpr (std::is_same_v<R, double>) {
      ok = std::isfinite(v);
    } else {
      ok = finite(v);
    }
    if (!ok) {
      const Vec3& n = rule.nodes[i];
      throw std::runtime_error("integrate_sphere: non-finite integrand at node " +
                               std::to_string(i) + " (" + std::to_string(n.x) + ", " +
                               std::to_string(n.y) + ", " + std::to_string(n.z) + ")");
    }
    if constexpr (std::is_same_v<R, double>) {
      acc += rule.weights[i] * v;
    } else {
      acc += rule.weights[i] * v;
    }
  }
  return acc;
}

}  // namespace roughflow
