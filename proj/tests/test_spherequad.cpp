#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "roughflow/rng.hpp"
#include "roughflow/sphere_rule.hpp"

using namespace roughflow;

namespace {
const double pi = 3.14159265358979323846;
const double four_pi = 4 * pi;
}  // namespace

TEST_CASE("rule nodes are unit and weights sum to 4pi") {
  for (int order : {2, 6, 14, 30}) {
    SphereRule rule = build_rule(order);
    double wsum = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      CHECK(std::abs(norm(rule.nodes[i]) - 1.0) < 1e-12);
      CHECK(rule.weights[i] > 0);
      wsum += rule.weights[i];
    }
    CHECK(std::abs(wsum - four_pi) < 1e-10);
  }
}

TEST_CASE("polynomial exactness up to the declared order") {
  // monomial integrals over S^2: nonzero only for all-even exponents, value
  // 4pi * prod (e_i-1)!! / (e_x+e_y+e_z+1)!!
  auto exact_moment = [](int ex, int ey, int ez) -> double {
    if (ex % 2 || ey % 2 || ez % 2) return 0.0;
    auto dfac = [](int n) {
      double p = 1;
      for (int k = n; k > 1; k -= 2) p *= k;
      return p;
    };
    return four_pi * dfac(ex - 1) * dfac(ey - 1) * dfac(ez - 1) /
           dfac(ex + ey + ez + 1);
  };
  for (int order : {6, 14}) {
    SphereRule rule = build_rule(order);
    for (int ex = 0; ex <= order; ++ex)
      for (int ey = 0; ex + ey <= order; ++ey)
        for (int ez = 0; ex + ey + ez <= order; ez += 2) {
          double got = integrate_sphere(rule, [&](const Vec3& w) {
            return std::pow(w.x, ex) * std::pow(w.y, ey) * std::pow(w.z, ez);
          });
          double want = exact_moment(ex, ey, ez);
          CHECK(std::abs(got - want) < 1e-9 * std::max(1.0, std::abs(want)));
        }
  }
}

TEST_CASE("order 6: constants and odd monomials") {
  SphereRule rule = build_rule(6);
  CHECK(integrate_sphere(rule, [](const Vec3&) { return 1.0; }) ==
        doctest::Approx(four_pi).epsilon(1e-12));
  CHECK(std::abs(integrate_sphere(rule, [](const Vec3& w) { return w.x; })) < 1e-12);
}

TEST_CASE("order 14: mixed fourth moment is 4pi/15") {
  SphereRule rule = build_rule(14);
  double got = integrate_sphere(rule, [](const Vec3& w) { return w.x * w.x * w.y * w.y; });
  CHECK(got == doctest::Approx(four_pi / 15.0).epsilon(1e-10));
}

TEST_CASE("constant vector integrand gives 4pi c") {
  SphereRule rule = build_rule(6);
  Vec3 c{0.3, -1.2, 2.0};
  Vec3 got = integrate_sphere(rule, [&](const Vec3&) { return c; });
  CHECK(norm(got - four_pi * c) < 1e-10);
}

TEST_CASE("plane wave at t|xi| = pi integrates to zero") {
  // int_{S^2} e^{i t xi.w} dw = 4pi sin(t|xi|)/(t|xi|); real part vanishes at pi
  SphereRule rule = build_rule(30);
  Vec3 xi{0.0, 0.0, 2.0};
  double t = pi / 2.0;
  double re = integrate_sphere(rule, [&](const Vec3& w) { return std::cos(t * dot(xi, w)); });
  double im = integrate_sphere(rule, [&](const Vec3& w) { return std::sin(t * dot(xi, w)); });
  CHECK(std::abs(re) < 1e-9);
  CHECK(std::abs(im) < 1e-9);
}

TEST_CASE("hemisphere integral of max(0, w_z) is pi") {
  // integrand has a kink at w_z = 0; Gauss-Legendre in cos(theta) converges
  // algebraically, so use a high order and a matching tolerance
  SphereRule rule = build_rule(62);
  double got = integrate_sphere(rule, [](const Vec3& w) { return std::max(0.0, w.z); });
  CHECK(got == doctest::Approx(pi).epsilon(2e-3));
}

TEST_CASE("refinement consistency on a smooth integrand") {
  auto f = [](const Vec3& w) { return std::exp(w.x + 0.5 * w.y); };
  double ref = integrate_sphere(build_rule(48), f);
  double prev_err = 1e300;
  for (int order : {4, 8, 16, 32}) {
    double err = std::abs(integrate_sphere(build_rule(order), f) - ref);
    CHECK(err <= prev_err + 1e-14);
    prev_err = err;
  }
  CHECK(prev_err < 1e-12);
}

TEST_CASE("rotation invariance for polynomials within order") {
  SphereRule rule = build_rule(8);
  Vec3 a{0.2, -0.7, 0.4}, b{1.0, 0.3, -0.5};
  auto f = [&](const Vec3& w) {
    double da = dot(a, w), db = dot(b, w);
    return da * da * da + db * db;
  };
  // random rotation built from an orthonormalized frame
  SplitRng rng(2024, 0);
  Vec3 e1 = rng.unit_vec3();
  Vec3 t = rng.unit_vec3();
  Vec3 e2 = t - dot(t, e1) * e1;
  e2 = e2 / norm(e2);
  Vec3 e3 = cross(e1, e2);
  auto rotated = [&](const Vec3& w) {
    return f(Vec3{dot(e1, w), dot(e2, w), dot(e3, w)});
  };
  double direct = integrate_sphere(rule, f);
  double rot = integrate_sphere(rule, rotated);
  CHECK(std::abs(direct - rot) < 1e-8);
}

TEST_CASE("determinism: rebuilding a rule reproduces it exactly") {
  SphereRule a = build_rule(14), b = build_rule(14);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.weights[i] == b.weights[i]);
    CHECK(a.nodes[i].x == b.nodes[i].x);
    CHECK(a.nodes[i].y == b.nodes[i].y);
    CHECK(a.nodes[i].z == b.nodes[i].z);
  }
}

TEST_CASE("unsupported order reports the supported range") {
  CHECK_THROWS_WITH_AS(build_rule(1), doctest::Contains("order"),
                       std::invalid_argument);
}

TEST_CASE("non-finite integrand names the node") {
  SphereRule rule = build_rule(4);
  CHECK_THROWS_WITH_AS(
      integrate_sphere(rule, [](const Vec3& w) { return 1.0 / (w.z - w.z); }),
      doctest::Contains("node"), std::runtime_error);
}
