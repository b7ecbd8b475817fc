#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "roughflow/vec.hpp"

namespace roughflow {

struct PhasePoint {
  Vec3 x, v;
};

// Time-and-state force evaluator F(t, x, v).
using Force = std::function<Vec3(double, const Vec3&, const Vec3&)>;

// Uniform-grid samples of the relativistic characteristic ODE
//   dX/dt = V/sqrt(1+|V|^2),  dV/dt = F(t, X, V).
struct Trajectory {
  double dt = 0;
  std::vector<Vec3> X, V;  // size n_steps + 1

  std::size_t steps() const { return X.empty() ? 0 : X.size() - 1; }
  double horizon() const { return dt * double(steps()); }
  // Per-step discrete velocity (X[k+1]-X[k])/dt, held constant on the step.
  Vec3 step_velocity(std::size_t k) const { return (X[k + 1] - X[k]) / dt; }
  // Piecewise-linear position at time s in [0, horizon].
  Vec3 position(double s) const;
};

struct PairedTrajectory {
  Trajectory base, shifted;
  Vec3 delta1, delta2;     // initial shift in x and v
  std::vector<double> A;   // A_delta(t_k), nondecreasing, A[0] = |delta|^2 + |delta1|^2

  double delta_norm() const { return std::sqrt(norm2(delta1) + norm2(delta2)); }
  double sup_dx2() const;                 // sup_k |X_k - X^d_k|^2
  double int_dv2() const;                 // sum_k |V_k - V^d_k|^2 dt
};

struct Ensemble {
  Vec3 x_lo, x_hi, v_lo, v_hi;
  std::vector<PhasePoint> points;
  std::uint64_t seed = 0;
  double weight = 0;  // |Omega| / N

  double volume() const {
    Vec3 dx = x_hi - x_lo, dv = v_hi - v_lo;
    return dx.x * dx.y * dx.z * dv.x * dv.y * dv.z;
  }
};

struct FunctionalReport {
  double delta = 0;
  double K = 0;
  double Q = 0;        // capped functional
  double Q_K = 0;      // uncapped variant on the truncated set
  double omega_K_fraction = 0;  // excluded fraction
  std::optional<double> I_delta;
  double psi_estimate = 0;  // Q / T
};

// Classical fixed-step RK4.  T is shortened to a multiple of dt by adjusting
// the last step.  Throws NumericalError with the (t,x) location if the force
// returns a non-finite value.
Trajectory integrate_trajectory(const Force& force, const PhasePoint& p0, double T,
                                double dt);

// Endpoint only (no storage); same scheme and step placement as above.
PhasePoint flow_map(const Force& force, const PhasePoint& p0, double T, double dt);

// Time-reversed flow: returns the point that flows to p under `force` over
// [0, t], by integrating the reversed dynamics.
PhasePoint backward_flow(const Force& force, const PhasePoint& p, double t, double dt);

// Central finite-difference determinant of the 6x6 Jacobian of `flow` at p.
double jacobian_estimate(const std::function<PhasePoint(const PhasePoint&)>& flow,
                         const PhasePoint& p, double h);

// |(X,V)(t+s,p0) - (X,V)(s, (X,V)(t,p0))| with identical dt everywhere.
double semigroup_residual(const Force& force, const PhasePoint& p0, double t, double s,
                          double dt);

// Integrates (X,V) from p0 and from (x+delta1, v+delta2) on the same grid and
// fills A_delta.  Requires |(delta1,delta2)| > 0.
PairedTrajectory pair_trajectories(const Force& force, const PhasePoint& p0,
                                   const Vec3& delta1, const Vec3& delta2, double T,
                                   double dt);

// Seeded uniform sampling of the phase-space box.
Ensemble sample_ensemble(Vec3 x_lo, Vec3 x_hi, Vec3 v_lo, Vec3 v_hi, int n,
                         std::uint64_t seed);

// Left-Riemann time integral of |F(t_k, X_k, V_k)| along the trajectory.
double force_path_integral(const Force& force, const Trajectory& traj);

struct OmegaK {
  std::vector<std::size_t> kept;  // indices with both path integrals <= K
  double excluded_fraction = 0;
};

// Truncation from precomputed per-pair path integrals {base, shifted}.
OmegaK truncate_omega_K(const std::vector<std::pair<double, double>>& path_integrals,
                        double K);

// Integrand of Q_delta for one pair: log(1 + [(sup + int) ^ cap] / delta^2).
double q_integrand(const PairedTrajectory& pair, double delta, bool cap);

// Q over a list of pairs with the ensemble weight |Omega|/N (the list is
// assumed to already be restricted to the index set of interest).
double functional_Q(const std::vector<PairedTrajectory>& pairs, double weight,
                    double delta, bool cap);

// Kirchhoff-like evaluator G(s, x).
using FieldEvaluator = std::function<Vec3(double, const Vec3&)>;

// Inner double time-quadrature of I_delta for one pair (left Riemann sums).
double i_delta_integrand(const PairedTrajectory& pair, const FieldEvaluator& G);

// I_delta = nu_K * weight * sum over (already truncated) pairs.
double functional_I_delta(const std::vector<PairedTrajectory>& pairs,
                          const FieldEvaluator& G, double nu_K, double weight);

// f(t, z) = f0(backward flow of z); evaluated on the probe list.
std::vector<double> pushforward_density(
    const Force& force, const std::function<double(const Vec3&, const Vec3&)>& f0,
    double t, double dt, const std::vector<PhasePoint>& probes);

}  // namespace roughflow
