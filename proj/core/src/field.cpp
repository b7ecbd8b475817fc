#include "roughflow/field.hpp"

#include <algorithm>
#include <cmath>

namespace roughflow {

bool GridField3::inside(const Vec3& x) const {
  Vec3 hi = upper_corner();
  return x.x >= origin.x && x.y >= origin.y && x.z >= origin.z && x.x <= hi.x &&
         x.y <= hi.y && x.z <= hi.z;
}

namespace {
struct CellPos {
  std::int64_t i, j, k;
  double fx, fy, fz;
  bool ok;
};

CellPos locate(const GridField3& g, const Vec3& x) {
  CellPos c{};
  if (!g.inside(x)) {
    c.ok = false;
    return c;
  }
  auto clamp_idx = [](double t, std::int64_t n, std::int64_t& i, double& f) {
    i = std::int64_t(std::floor(t));
    if (i < 0) i = 0;
    if (i > n - 2) i = n - 2;
    f = t - double(i);
  };
  clamp_idx((x.x - g.origin.x) / g.spacing, g.nx, c.i, c.fx);
  clamp_idx((x.y - g.origin.y) / g.spacing, g.ny, c.j, c.fy);
  clamp_idx((x.z - g.origin.z) / g.spacing, g.nz, c.k, c.fz);
  c.ok = true;
  return c;
}
}  // namespace

double GridField3::sample(const Vec3& x) const {
  CellPos c = locate(*this, x);
  if (!c.ok) return 0.0;
  double v = 0.0;
  for (int dz = 0; dz < 2; ++dz)
    for (int dy = 0; dy < 2; ++dy)
      for (int dx = 0; dx < 2; ++dx) {
        double w = (dx ? c.fx : 1 - c.fx) * (dy ? c.fy : 1 - c.fy) * (dz ? c.fz : 1 - c.fz);
        v += w * at(c.i + dx, c.j + dy, c.k + dz);
      }
  return v;
}

Vec3 GridField3::gradient(const Vec3& x) const {
  CellPos c = locate(*this, x);
  if (!c.ok) return {};
  auto corner = [&](int dx, int dy, int dz) { return at(c.i + dx, c.j + dy, c.k + dz); };
  double gx = 0, gy = 0, gz = 0;
  for (int dz = 0; dz < 2; ++dz)
    for (int dy = 0; dy < 2; ++dy) {
      double w = (dy ? c.fy : 1 - c.fy) * (dz ? c.fz : 1 - c.fz);
      gx += w * (corner(1, dy, dz) - corner(0, dy, dz));
    }
  for (int dz = 0; dz < 2; ++dz)
    for (int dx = 0; dx < 2; ++dx) {
      double w = (dx ? c.fx : 1 - c.fx) * (dz ? c.fz : 1 - c.fz);
      gy += w * (corner(dx, 1, dz) - corner(dx, 0, dz));
    }
  for (int dy = 0; dy < 2; ++dy)
    for (int dx = 0; dx < 2; ++dx) {
      double w = (dx ? c.fx : 1 - c.fx) * (dy ? c.fy : 1 - c.fy);
      gz += w * (corner(dx, dy, 1) - corner(dx, dy, 0));
    }
  return Vec3{gx, gy, gz} / spacing;
}

ScalarField3 GridField3::as_field() const {
  GridField3 copy = *this;
  ScalarField3 f;
  Vec3 c = 0.5 * (origin + upper_corner());
  f.support_radius = 0.5 * norm(upper_corner() - origin) + norm(c);
  f.kind = FieldKind::GridInterpolated;
  f.eval = [copy](const Vec3& x) { return copy.sample(x); };
  f.grad = [copy](const Vec3& x) { return copy.gradient(x); };
  return f;
}

GridField3 make_grid(std::function<double(const Vec3&)> f, Vec3 origin, double spacing,
                     std::int64_t nx, std::int64_t ny, std::int64_t nz) {
  GridField3 g;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.origin = origin;
  g.spacing = spacing;
  g.samples.resize(std::size_t(nx * ny * nz));
  for (std::int64_t k = 0; k < nz; ++k)
    for (std::int64_t j = 0; j < ny; ++j)
      for (std::int64_t i = 0; i < nx; ++i)
        g.samples[std::size_t((k * ny + j) * nx + i)] =
            f(origin + spacing * Vec3{double(i), double(j), double(k)});
  return g;
}

ScalarField3 gaussian_bump(Vec3 center, double width, double amplitude) {
  ScalarField3 f;
  f.support_radius = norm(center) + 12.0 * width;  // numerically compact
  f.kind = FieldKind::Analytic;
  double iw2 = 1.0 / (width * width);
  f.eval = [=](const Vec3& x) {
    double r2 = norm2(x - center);
    return r2 * iw2 > 280.0 ? 0.0 : amplitude * std::exp(-r2 * iw2);
  };
  f.grad = [=, ev = f.eval](const Vec3& x) { return (-2.0 * iw2) * ev(x) * (x - center); };
  return f;
}

ScalarField3 ball_indicator(Vec3 center, double radius) {
  ScalarField3 f;
  f.support_radius = norm(center) + radius;
  f.kind = FieldKind::Analytic;
  f.eval = [=](const Vec3& x) { return norm2(x - center) <= radius * radius ? 1.0 : 0.0; };
  f.grad = [](const Vec3&) { return Vec3{}; };  // a.e. zero
  return f;
}

VectorField3 smooth_gaussian_force() {
  // Three bumps, unit-scale widths; x-only dependence keeps the phase-space
  // divergence zero.
  struct Bump {
    Vec3 c, dir;
    double w, a;
  };
  static const Bump bumps[] = {
      {{0.3, -0.2, 0.1}, {0.0, 0.6, 0.8}, 0.7, 0.8},
      {{-0.5, 0.4, -0.3}, {0.8, 0.0, -0.6}, 0.9, 0.6},
      {{0.1, 0.5, 0.6}, {-0.48, 0.6, 0.64}, 0.8, 0.5},
  };
  VectorField3 F;
  F.support_radius = 1e9;  // Gaussian tails; treated as globally defined
  F.kind = FieldKind::Analytic;
  F.eval = [](const Vec3& x) {
    Vec3 out{};
    for (const Bump& b : bumps) {
      double e = std::exp(-norm2(x - b.c) / (b.w * b.w));
      out += (b.a * e) * b.dir;
    }
    return out;
  };
  F.jac = [](const Vec3& x) {
    Mat3 J{};
    for (const Bump& b : bumps) {
      double iw2 = 1.0 / (b.w * b.w);
      double e = std::exp(-norm2(x - b.c) * iw2);
      Vec3 g = (-2.0 * iw2 * b.a * e) * (x - b.c);
      J = J + Mat3::outer(b.dir, g);
    }
    return J;
  };
  return F;
}

namespace {
// Multi-scale truncated inverse-distance bumps.  Amplitudes double and
// supports halve from one scale to the next, which produces an
// approximately K^{-2} tail for the time-integrated force along straight
// probes (each scale contributes ~ rho_j^2 exp(-K/A_j)).
struct RoughBump {
  Vec3 c, dir;
  double amplitude, radius, cap;
};

const std::vector<RoughBump>& rough_bumps() {
  static const std::vector<RoughBump> bumps = [] {
    std::vector<RoughBump> out;
    const Vec3 centers[] = {
        {0.0, 0.0, 0.0},     {0.31, -0.12, 0.08}, {-0.42, 0.25, -0.31},
        {0.18, 0.52, -0.44}, {-0.11, -0.57, 0.38}, {0.55, 0.21, 0.47},
        {-0.6, -0.33, -0.2},
    };
    const Vec3 dirs[] = {
        {0.0, 0.6, 0.8},  {0.8, 0.0, -0.6},  {-0.48, 0.6, 0.64}, {0.6, 0.64, -0.48},
        {0.0, -0.8, 0.6}, {-0.6, 0.48, 0.64}, {0.64, -0.6, 0.48},
    };
    for (int j = 0; j <= 6; ++j) {
      RoughBump b;
      b.amplitude = double(1 << j);
      b.radius = 1.0 / double(1 << j);
      b.cap = 256.0;  // truncation M of min(M, 1/r)
      b.c = centers[j];
      b.dir = dirs[j];
      out.push_back(b);
    }
    return out;
  }();
  return bumps;
}

double bump_profile(const RoughBump& b, double r) {
  if (r >= b.radius) return 0.0;
  return b.amplitude * (std::min(b.cap, 1.0 / std::max(r, 1e-9)) - 1.0 / b.radius);
}
}  // namespace

ScalarField3 rough_field() {
  ScalarField3 f;
  f.support_radius = 1.3;
  f.kind = FieldKind::Analytic;
  f.eval = [](const Vec3& x) {
    double v = 0;
    for (const RoughBump& b : rough_bumps()) v += bump_profile(b, norm(x - b.c));
    return v;
  };
  f.grad = [](const Vec3& x) {
    Vec3 g{};
    for (const RoughBump& b : rough_bumps()) {
      Vec3 d = x - b.c;
      double r = norm(d);
      if (r >= b.radius || r < 1e-9) continue;
      if (1.0 / r < b.cap) g += (-b.amplitude / (r * r * r)) * d;
    }
    return g;
  };
  return f;
}

VectorField3 rough_vector_field() {
  VectorField3 F;
  F.support_radius = 1.3;
  F.kind = FieldKind::Analytic;
  F.eval = [](const Vec3& x) {
    Vec3 out{};
    for (const RoughBump& b : rough_bumps()) out += bump_profile(b, norm(x - b.c)) * b.dir;
    return out;
  };
  F.jac = [](const Vec3& x) {
    Mat3 J{};
    for (const RoughBump& b : rough_bumps()) {
      Vec3 d = x - b.c;
      double r = norm(d);
      if (r >= b.radius || r < 1e-9) continue;
      if (1.0 / r < b.cap) J = J + Mat3::outer(b.dir, (-b.amplitude / (r * r * r)) * d);
    }
    return J;
  };
  return F;
}

double grid_lp_norm(const GridField3& g, double p) {
  double acc = 0;
  for (double v : g.samples) acc += std::pow(std::abs(v), p);
  double cell = g.spacing * g.spacing * g.spacing;
  return std::pow(acc * cell, 1.0 / p);
}

}  // namespace roughflow
