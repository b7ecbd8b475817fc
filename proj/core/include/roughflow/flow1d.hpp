#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace roughflow {

// Small fixed-capacity vector for the 1-D model's v in R^d, d <= 4.
struct VecD {
  std::array<double, 4> a{};
  int dim = 1;

  double& operator[](int i) { return a[std::size_t(i)]; }
  double operator[](int i) const { return a[std::size_t(i)]; }
};

double norm2(const VecD& v);
VecD axpy(double s, const VecD& x, const VecD& y);  // s*x + y

// Lipschitz advection speed with the noncharacteristic sublevel-set bound
// |{v : |alpha(v) - w| <= eta}| <= C * eta on the working box.
struct AlphaSpec {
  std::function<double(const VecD&)> alpha;
  double lipschitz_constant = 1.0;
  double nonchar_constant = 1.0;
  int dim = 1;
};

struct AlphaValidation {
  double max_lipschitz_quotient = 0;
  double max_sublevel_ratio = 0;  // measure / (C * eta), max over probes
  bool ok = false;
};

// Monte Carlo check of the two AlphaSpec invariants on [lo,hi]^d.
AlphaValidation validate_alpha(const AlphaSpec& spec, double lo, double hi,
                               std::uint64_t seed = 5);

// F(t,x) = sum_n mu_n F0(x - xi_n t) on a finite truncation.
struct MultiSpeedForce {
  std::function<VecD(double)> profile;  // F0, bounded
  double profile_sup = 1.0;             // ||F0||_inf
  std::vector<double> speeds;           // xi_n
  std::vector<double> weights;          // mu_n, sorted nonincreasing
  double gamma = 2.5;
  double tail_bound = 0.0;              // ||F0||_inf * sum_{n>N} mu_n (declared)
  int dim = 1;

  double weight_sum() const;
  double sup_norm_bound() const { return profile_sup * weight_sum(); }
  // sum_n (1 + n^gamma) mu_n on the truncation (n counted from 1)
  double mun_series() const;
};

VecD eval_force_1d(const MultiSpeedForce& f, double t, double x);

// Default model instance: alpha(v) = v (d=1), clipped 1-periodic sawtooth
// profile, xi_n = n/(n+1), mu_n = n^{-(gamma+1.1)} with gamma=2.5, N speeds.
MultiSpeedForce default_multi_speed_force(int n_speeds = 64, double gamma = 2.5);
AlphaSpec identity_alpha();

struct Trajectory1D {
  double dt = 0;
  std::vector<double> X;
  std::vector<VecD> V;

  std::size_t steps() const { return X.empty() ? 0 : X.size() - 1; }
};

Trajectory1D integrate_1d(const AlphaSpec& alpha, const MultiSpeedForce& force, double x0,
                          const VecD& v0, double T, double dt);

struct Paired1D {
  Trajectory1D base, shifted;
  double delta_norm = 0;

  double sup_dx2() const;
  double int_dv2() const;
};

Paired1D pair_trajectories_1d(const AlphaSpec& alpha, const MultiSpeedForce& force,
                              double x0, const VecD& v0, double delta1,
                              const VecD& delta2, double T, double dt);

struct Interval {
  double t0 = 0, t1 = 0;
  double length() const { return t1 - t0; }
};

struct ResonanceDecomposition {
  std::vector<std::vector<Interval>> intervals;  // per speed n
  std::vector<double> l_n;                       // occupation lengths
  std::vector<int> k_n;                          // interval counts
  double eta = 0;
  std::vector<double> a;  // thresholds a_n

  double total_occupation() const;
  int max_count() const;
};

// Scans phi_n(t) = |alpha(V_t) - xi_n| on the grid.  An interval opens when
// phi_n drops to <= a_n*eta, closes when it returns above, and is kept only
// if its minimum dips to <= a_n*eta/2.
ResonanceDecomposition decompose_resonances(const Trajectory1D& traj,
                                            const AlphaSpec& alpha,
                                            const std::vector<double>& speeds, double eta,
                                            const std::vector<double>& a);

// Fraction of trajectories whose occupation time |{t : |alpha(V_t)-w| <= eta}|
// is at least K*eta.
double occupation_measure(const std::vector<Trajectory1D>& trajs, const AlphaSpec& alpha,
                          double w, double eta, double K);

enum class DeltaRateMode { Cumulative, Constant };

struct AdaptiveDelta {
  double base_delta = 0;
  DeltaRateMode mode = DeltaRateMode::Cumulative;
  std::vector<double> values;  // delta_bar(t_k), nondecreasing, values[0] = |delta|

  double final_value() const { return values.back(); }
};

AdaptiveDelta adaptive_delta(const ResonanceDecomposition& base,
                             const ResonanceDecomposition& shifted, double base_delta,
                             double f_inf_norm, double C, DeltaRateMode mode,
                             std::size_t n_grid, double dt);

// Ensemble average of log(1 + (sup|dX|^2 + int|dV|^2 dt) / delta_bar(T)^2).
double functional_R(const std::vector<Paired1D>& pairs,
                    const std::vector<AdaptiveDelta>& delta_bars);

// --- Scaling study ---------------------------------------------------------

struct ScalingRow {
  double delta = 0, eta = 0, R = 0;
  double median_delta_bar_T = 0;
  double mean_sum_l_n = 0;
  int max_k_n = 0;
  double fitted_exponent_so_far = 0;
  bool under_resolved = false;  // dt > a_N * eta / 10
};

struct ScalingStudy1DConfig {
  std::vector<double> delta_grid;  // log-spaced, >= 4 points
  int n_speeds = 64;
  double gamma = 2.5;
  double T = 1.0, dt = 2.5e-4;
  int n_pairs = 500;
  double x_lo = -1, x_hi = 1, v_lo = -1, v_hi = 1;
  double rate_constant = 1.0;
  DeltaRateMode mode = DeltaRateMode::Cumulative;
  std::uint64_t seed = 42;
};

std::vector<ScalingRow> run_scaling_study_1d(const ScalingStudy1DConfig& cfg);

}  // namespace roughflow
