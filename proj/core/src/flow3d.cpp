#include "roughflow/flow3d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roughflow/errors.hpp"
#include "roughflow/rng.hpp"

namespace roughflow {

namespace {

Vec3 checked_force(const Force& force, double t, const Vec3& x, const Vec3& v) {
  Vec3 f = force(t, x, v);
  if (!finite(f))
    throw NumericalError("non-finite force at t=" + std::to_string(t) + ", x=(" +
                         std::to_string(x.x) + ", " + std::to_string(x.y) + ", " +
                         std::to_string(x.z) + ")");
  return f;
}

// One classical RK4 step of the characteristic ODE.
PhasePoint rk4_step(const Force& force, double t, const PhasePoint& p, double h) {
  Vec3 kx1 = rel_velocity(p.v);
  Vec3 kv1 = checked_force(force, t, p.x, p.v);
  Vec3 kx2 = rel_velocity(p.v + 0.5 * h * kv1);
  Vec3 kv2 = checked_force(force, t + 0.5 * h, p.x + 0.5 * h * kx1, p.v + 0.5 * h * kv1);
  Vec3 kx3 = rel_velocity(p.v + 0.5 * h * kv2);
  Vec3 kv3 = checked_force(force, t + 0.5 * h, p.x + 0.5 * h * kx2, p.v + 0.5 * h * kv2);
  Vec3 kx4 = rel_velocity(p.v + h * kv3);
  Vec3 kv4 = checked_force(force, t + h, p.x + h * kx3, p.v + h * kv3);
  return {p.x + (h / 6.0) * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4),
          p.v + (h / 6.0) * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4)};
}

std::size_t step_count(double T, double dt) {
  return std::size_t(std::llround(std::ceil(T / dt - 1e-12)));
}

}  // namespace

Vec3 Trajectory::position(double s) const {
  if (s <= 0) return X.front();
  std::size_t n = steps();
  double u = s / dt;
  std::size_t k = std::min(n - 1, std::size_t(u));
  double f = u - double(k);
  if (f > 1) f = 1;
  return X[k] + f * (X[k + 1] - X[k]);
}

double PairedTrajectory::sup_dx2() const {
  double m = 0;
  for (std::size_t k = 0; k < base.X.size(); ++k)
    m = std::max(m, norm2(base.X[k] - shifted.X[k]));
  return m;
}

double PairedTrajectory::int_dv2() const {
  double acc = 0;
  for (std::size_t k = 0; k + 1 < base.V.size(); ++k)
    acc += norm2(base.V[k] - shifted.V[k]) * base.dt;
  return acc;
}

Trajectory integrate_trajectory(const Force& force, const PhasePoint& p0, double T,
                                double dt) {
  if (dt <= 0) throw NumericalError("integrate_trajectory: dt must be positive");
  std::size_t n = step_count(T, dt);
  Trajectory traj;
  traj.dt = dt;
  traj.X.reserve(n + 1);
  traj.V.reserve(n + 1);
  traj.X.push_back(p0.x);
  traj.V.push_back(p0.v);
  PhasePoint p = p0;
  for (std::size_t k = 0; k < n; ++k) {
    double t = dt * double(k);
    double h = std::min(dt, T - t);  // shortened last step
    p = rk4_step(force, t, p, h);
    traj.X.push_back(p.x);
    traj.V.push_back(p.v);
  }
  return traj;
}

PhasePoint flow_map(const Force& force, const PhasePoint& p0, double T, double dt) {
  std::size_t n = step_count(T, dt);
  PhasePoint p = p0;
  for (std::size_t k = 0; k < n; ++k) {
    double t = dt * double(k);
    p = rk4_step(force, t, p, std::min(dt, T - t));
  }
  return p;
}

PhasePoint backward_flow(const Force& force, const PhasePoint& p, double t, double dt) {
  // Y(s) = (X,V)(t - s); dY/ds = -f(t - s, Y).
  Force reversed = [&force, t](double s, const Vec3& x, const Vec3& v) {
    return -1.0 * force(t - s, x, v);
  };
  PhasePoint q = p;
  std::size_t n = step_count(t, dt);
  for (std::size_t k = 0; k < n; ++k) {
    double s = dt * double(k);
    double h = std::min(dt, t - s);
    // Reversed position derivative as well: integrate the full reversed system.
    Vec3 kx1 = -1.0 * rel_velocity(q.v);
    Vec3 kv1 = reversed(s, q.x, q.v);
    Vec3 kx2 = -1.0 * rel_velocity(q.v + 0.5 * h * kv1);
    Vec3 kv2 = reversed(s + 0.5 * h, q.x + 0.5 * h * kx1, q.v + 0.5 * h * kv1);
    Vec3 kx3 = -1.0 * rel_velocity(q.v + 0.5 * h * kv2);
    Vec3 kv3 = reversed(s + 0.5 * h, q.x + 0.5 * h * kx2, q.v + 0.5 * h * kv2);
    Vec3 kx4 = -1.0 * rel_velocity(q.v + h * kv3);
    Vec3 kv4 = reversed(s + h, q.x + h * kx3, q.v + h * kv3);
    q.x += (h / 6.0) * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4);
    q.v += (h / 6.0) * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
  }
  return q;
}

double jacobian_estimate(const std::function<PhasePoint(const PhasePoint&)>& flow,
                         const PhasePoint& p, double h) {
  if (h <= 0) throw NumericalError("jacobian_estimate: h must be positive");
  double J[6][6];
  for (int c = 0; c < 6; ++c) {
    PhasePoint lo = p, hi = p;
    if (c < 3) {
      hi.x[c] += h;
      lo.x[c] -= h;
    } else {
      hi.v[c - 3] += h;
      lo.v[c - 3] -= h;
    }
    PhasePoint fhi = flow(hi), flo = flow(lo);
    for (int r = 0; r < 3; ++r) {
      J[r][c] = (fhi.x[r] - flo.x[r]) / (2 * h);
      J[r + 3][c] = (fhi.v[r] - flo.v[r]) / (2 * h);
    }
  }
  // LU with partial pivoting.
  double det = 1.0;
  for (int i = 0; i < 6; ++i) {
    int piv = i;
    for (int r = i + 1; r < 6; ++r)
      if (std::abs(J[r][i]) > std::abs(J[piv][i])) piv = r;
    if (piv != i) {
      std::swap(J[piv], J[i]);
      det = -det;
    }
    if (!std::isfinite(J[i][i]) || J[i][i] == 0.0)
      throw NumericalError("jacobian_estimate: singular difference stencil");
    det *= J[i][i];
    for (int r = i + 1; r < 6; ++r) {
      double f = J[r][i] / J[i][i];
      for (int c = i; c < 6; ++c) J[r][c] -= f * J[i][c];
    }
  }
  return det;
}

double semigroup_residual(const Force& force, const PhasePoint& p0, double t, double s,
                          double dt) {
  PhasePoint direct = flow_map(force, p0, t + s, dt);
  PhasePoint mid = flow_map(force, p0, t, dt);
  Force shifted = [&force, t](double u, const Vec3& x, const Vec3& v) {
    return force(t + u, x, v);
  };
  PhasePoint composed = flow_map(shifted, mid, s, dt);
  return std::sqrt(norm2(direct.x - composed.x) + norm2(direct.v - composed.v));
}

PairedTrajectory pair_trajectories(const Force& force, const PhasePoint& p0,
                                   const Vec3& delta1, const Vec3& delta2, double T,
                                   double dt) {
  double d2 = norm2(delta1) + norm2(delta2);
  if (d2 <= 0) throw NumericalError("pair_trajectories: |(delta1,delta2)| must be > 0");
  PairedTrajectory pair;
  pair.delta1 = delta1;
  pair.delta2 = delta2;
  pair.base = integrate_trajectory(force, p0, T, dt);
  pair.shifted = integrate_trajectory(force, {p0.x + delta1, p0.v + delta2}, T, dt);
  std::size_t n = pair.base.X.size();
  pair.A.resize(n);
  double sup_dx2 = 0, int_dv2 = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sup_dx2 = std::max(sup_dx2, norm2(pair.base.X[k] - pair.shifted.X[k]));
    pair.A[k] = d2 + sup_dx2 + int_dv2;
    int_dv2 += norm2(pair.base.V[k] - pair.shifted.V[k]) * dt;
  }
  return pair;
}

Ensemble sample_ensemble(Vec3 x_lo, Vec3 x_hi, Vec3 v_lo, Vec3 v_hi, int n,
                         std::uint64_t seed) {
  Ensemble e;
  e.x_lo = x_lo;
  e.x_hi = x_hi;
  e.v_lo = v_lo;
  e.v_hi = v_hi;
  e.seed = seed;
  e.points.reserve(std::size_t(n));
  for (int i = 0; i < n; ++i) {
    SplitRng rng(seed, std::uint64_t(i));
    e.points.push_back({rng.in_box(x_lo, x_hi), rng.in_box(v_lo, v_hi)});
  }
  e.weight = e.volume() / double(n);
  return e;
}

double force_path_integral(const Force& force, const Trajectory& traj) {
  double acc = 0;
  for (std::size_t k = 0; k + 1 < traj.X.size(); ++k)
    acc += norm(force(traj.dt * double(k), traj.X[k], traj.V[k])) * traj.dt;
  return acc;
}

OmegaK truncate_omega_K(const std::vector<std::pair<double, double>>& path_integrals,
                        double K) {
  OmegaK out;
  for (std::size_t i = 0; i < path_integrals.size(); ++i)
    if (path_integrals[i].first <= K && path_integrals[i].second <= K)
      out.kept.push_back(i);
  out.excluded_fraction =
      path_integrals.empty()
          ? 0.0
          : 1.0 - double(out.kept.size()) / double(path_integrals.size());
  return out;
}

double q_integrand(const PairedTrajectory& pair, double delta, bool cap) {
  double s = pair.sup_dx2() + pair.int_dv2();
  if (cap) s = std::min(s, 1.0);
  return std::log1p(s / (delta * delta));
}

double functional_Q(const std::vector<PairedTrajectory>& pairs, double weight,
                    double delta, bool cap) {
  double acc = 0;
  for (const auto& p : pairs) acc += q_integrand(p, delta, cap);
  return weight * acc;
}

double i_delta_integrand(const PairedTrajectory& pair, const FieldEvaluator& G) {
  const double dt = pair.base.dt;
  const std::size_t n = pair.base.steps();
  double acc = 0;
  Vec3 cum{};  // int_0^{t_k} (G(s, X^d_s) - G(s, X_s)) ds, left Riemann
  for (std::size_t k = 0; k < n; ++k) {
    double t = dt * double(k);
    acc += dt * norm(pair.base.V[k] - pair.shifted.V[k]) / pair.A[k] * norm(cum);
    cum += dt * (G(t, pair.shifted.X[k]) - G(t, pair.base.X[k]));
  }
  return acc;
}

double functional_I_delta(const std::vector<PairedTrajectory>& pairs,
                          const FieldEvaluator& G, double nu_K, double weight) {
  double acc = 0;
  for (const auto& p : pairs) acc += i_delta_integrand(p, G);
  return nu_K * weight * acc;
}

std::vector<double> pushforward_density(
    const Force& force, const std::function<double(const Vec3&, const Vec3&)>& f0,
    double t, double dt, const std::vector<PhasePoint>& probes) {
  std::vector<double> out;
  out.reserve(probes.size());
  for (const PhasePoint& p : probes) {
    if (t == 0) {
      out.push_back(f0(p.x, p.v));
      continue;
    }
    PhasePoint q = backward_flow(force, p, t, dt);
    out.push_back(f0(q.x, q.v));
  }
  return out;
}

}  // namespace roughflow
