#include "roughflow/flow1d.hpp"

#include <algorithm>
#include <cmath>

#include "roughflow/errors.hpp"
#include "roughflow/fit.hpp"
#include "roughflow/rng.hpp"

namespace roughflow {

double norm2(const VecD& v) {
  double s = 0;
  for (int i = 0; i < v.dim; ++i) s += v[i] * v[i];
  return s;
}

VecD axpy(double s, const VecD& x, const VecD& y) {
  VecD out = y;
  for (int i = 0; i < x.dim; ++i) out[i] += s * x[i];
  return out;
}

AlphaValidation validate_alpha(const AlphaSpec& spec, double lo, double hi,
                               std::uint64_t seed) {
  AlphaValidation out;
  const int n_pairs = 4000;
  SplitRng rng(seed, 0);
  auto draw = [&] {
    VecD v;
    v.dim = spec.dim;
    for (int i = 0; i < spec.dim; ++i) v[i] = rng.uniform(lo, hi);
    return v;
  };
  for (int i = 0; i < n_pairs; ++i) {
    VecD a = draw(), b = draw();
    double d2 = 0;
    for (int j = 0; j < spec.dim; ++j) d2 += (a[j] - b[j]) * (a[j] - b[j]);
    if (d2 < 1e-20) continue;
    double q = std::abs(spec.alpha(a) - spec.alpha(b)) / std::sqrt(d2);
    out.max_lipschitz_quotient = std::max(out.max_lipschitz_quotient, q);
  }
  // deterministic midpoint lattice; MC noise would swamp the small-eta ratios
  double box_vol = std::pow(hi - lo, spec.dim);
  const int n_side = std::max(2, int(std::round(std::pow(2e5, 1.0 / spec.dim))));
  std::int64_t total = 1;
  for (int j = 0; j < spec.dim; ++j) total *= n_side;
  std::vector<VecD> lattice;
  lattice.reserve(std::size_t(total));
  for (std::int64_t idx = 0; idx < total; ++idx) {
    VecD v;
    v.dim = spec.dim;
    std::int64_t rest = idx;
    for (int j = 0; j < spec.dim; ++j) {
      v[j] = lo + (double(rest % n_side) + 0.5) * (hi - lo) / double(n_side);
      rest /= n_side;
    }
    lattice.push_back(v);
  }
  for (double eta : {0.1, 0.01}) {
    for (int k = 0; k < 20; ++k) {
      double w = rng.uniform(lo - 0.2, hi + 0.2);
      std::int64_t hits = 0;
      for (const VecD& v : lattice)
        if (std::abs(spec.alpha(v) - w) <= eta) ++hits;
      double measure = box_vol * double(hits) / double(total);
      out.max_sublevel_ratio =
          std::max(out.max_sublevel_ratio, measure / (spec.nonchar_constant * eta));
    }
  }
  out.ok = out.max_lipschitz_quotient <= spec.lipschitz_constant * 1.01 &&
           out.max_sublevel_ratio <= 1.05;
  return out;
}

double MultiSpeedForce::weight_sum() const {
  double s = 0;
  for (double m : weights) s += m;
  return s;
}

double MultiSpeedForce::mun_series() const {
  double s = 0;
  for (std::size_t n = 0; n < weights.size(); ++n)
    s += (1.0 + std::pow(double(n + 1), gamma)) * weights[n];
  return s;
}

VecD eval_force_1d(const MultiSpeedForce& f, double t, double x) {
  VecD acc;
  acc.dim = f.dim;
  for (std::size_t n = 0; n < f.speeds.size(); ++n) {
    VecD p = f.profile(x - f.speeds[n] * t);
    for (int i = 0; i < f.dim; ++i) acc[i] += f.weights[n] * p[i];
  }
  return acc;
}

MultiSpeedForce default_multi_speed_force(int n_speeds, double gamma) {
  MultiSpeedForce f;
  f.gamma = gamma;
  f.dim = 1;
  f.profile_sup = 1.0;
  // clipped 1-periodic sawtooth: bounded, discontinuous at integers
  f.profile = [](double x) {
    VecD out;
    out.dim = 1;
    double frac = x - std::floor(x);
    out[0] = std::clamp(1.5 * (2.0 * frac - 1.0), -1.0, 1.0);
    return out;
  };
  for (int n = 1; n <= n_speeds; ++n) {
    f.speeds.push_back(double(n) / double(n + 1));
    f.weights.push_back(std::pow(double(n), -(gamma + 1.1)));
  }
  // declared tail: sum_{n>N} n^{-(gamma+1.1)} <= integral bound
  f.tail_bound = f.profile_sup * std::pow(double(n_speeds), -(gamma + 0.1)) / (gamma + 0.1);
  return f;
}

AlphaSpec identity_alpha() {
  AlphaSpec spec;
  spec.dim = 1;
  spec.alpha = [](const VecD& v) { return v[0]; };
  spec.lipschitz_constant = 1.0;
  spec.nonchar_constant = 2.0;  // |{v in R : |v-w| <= eta}| = 2 eta
  return spec;
}

Trajectory1D integrate_1d(const AlphaSpec& alpha, const MultiSpeedForce& force, double x0,
                          const VecD& v0, double T, double dt) {
  if (dt <= 0) throw NumericalError("integrate_1d: dt must be positive");
  std::size_t n = std::size_t(std::llround(std::ceil(T / dt - 1e-12)));
  Trajectory1D traj;
  traj.dt = dt;
  traj.X.reserve(n + 1);
  traj.V.reserve(n + 1);
  double x = x0;
  VecD v = v0;
  traj.X.push_back(x);
  traj.V.push_back(v);
  for (std::size_t k = 0; k < n; ++k) {
    double t = dt * double(k);
    double h = std::min(dt, T - t);
    double kx1 = alpha.alpha(v);
    VecD kv1 = eval_force_1d(force, t, x);
    VecD v2 = axpy(0.5 * h, kv1, v);
    double kx2 = alpha.alpha(v2);
    VecD kv2 = eval_force_1d(force, t + 0.5 * h, x + 0.5 * h * kx1);
    VecD v3 = axpy(0.5 * h, kv2, v);
    double kx3 = alpha.alpha(v3);
    VecD kv3 = eval_force_1d(force, t + 0.5 * h, x + 0.5 * h * kx2);
    VecD v4 = axpy(h, kv3, v);
    double kx4 = alpha.alpha(v4);
    VecD kv4 = eval_force_1d(force, t + h, x + h * kx3);
    x += (h / 6.0) * (kx1 + 2 * kx2 + 2 * kx3 + kx4);
    for (int i = 0; i < v.dim; ++i)
      v[i] += (h / 6.0) * (kv1[i] + 2 * kv2[i] + 2 * kv3[i] + kv4[i]);
    traj.X.push_back(x);
    traj.V.push_back(v);
  }
  return traj;
}

double Paired1D::sup_dx2() const {
  double m = 0;
  for (std::size_t k = 0; k < base.X.size(); ++k) {
    double d = base.X[k] - shifted.X[k];
    m = std::max(m, d * d);
  }
  return m;
}

double Paired1D::int_dv2() const {
  double acc = 0;
  for (std::size_t k = 0; k + 1 < base.V.size(); ++k) {
    double d2 = 0;
    for (int i = 0; i < base.V[k].dim; ++i) {
      double d = base.V[k][i] - shifted.V[k][i];
      d2 += d * d;
    }
    acc += d2 * base.dt;
  }
  return acc;
}

Paired1D pair_trajectories_1d(const AlphaSpec& alpha, const MultiSpeedForce& force,
                              double x0, const VecD& v0, double delta1,
                              const VecD& delta2, double T, double dt) {
  Paired1D pair;
  pair.delta_norm = std::sqrt(delta1 * delta1 + norm2(delta2));
  if (pair.delta_norm <= 0)
    throw NumericalError("pair_trajectories_1d: |(delta1,delta2)| must be > 0");
  pair.base = integrate_1d(alpha, force, x0, v0, T, dt);
  VecD v0s = v0;
  for (int i = 0; i < v0.dim; ++i) v0s[i] += delta2[i];
  pair.shifted = integrate_1d(alpha, force, x0 + delta1, v0s, T, dt);
  return pair;
}

double ResonanceDecomposition::total_occupation() const {
  double s = 0;
  for (double l : l_n) s += l;
  return s;
}

int ResonanceDecomposition::max_count() const {
  int m = 0;
  for (int k : k_n) m = std::max(m, k);
  return m;
}

ResonanceDecomposition decompose_resonances(const Trajectory1D& traj,
                                            const AlphaSpec& alpha,
                                            const std::vector<double>& speeds, double eta,
                                            const std::vector<double>& a) {
  ResonanceDecomposition out;
  out.eta = eta;
  out.a = a;
  out.intervals.resize(speeds.size());
  out.l_n.assign(speeds.size(), 0.0);
  out.k_n.assign(speeds.size(), 0);
  const std::size_t m = traj.X.size();
  std::vector<double> av(m);
  for (std::size_t k = 0; k < m; ++k) av[k] = alpha.alpha(traj.V[k]);
  for (std::size_t n = 0; n < speeds.size(); ++n) {
    const double thr = a[n] * eta;
    bool open = false;
    std::size_t open_k = 0;
    double min_phi = 0;
    auto close = [&](std::size_t end_k) {
      if (min_phi <= 0.5 * thr && end_k > open_k) {
        Interval iv{traj.dt * double(open_k), traj.dt * double(end_k)};
        out.intervals[n].push_back(iv);
        out.l_n[n] += iv.length();
        out.k_n[n] += 1;
      }
      open = false;
    };
    for (std::size_t k = 0; k < m; ++k) {
      double phi = std::abs(av[k] - speeds[n]);
      if (!open && phi <= thr) {
        open = true;
        open_k = k;
        min_phi = phi;
      } else if (open) {
        if (phi <= thr)
          min_phi = std::min(min_phi, phi);
        else
          close(k - 1);
      }
    }
    if (open) close(m - 1);
  }
  return out;
}

double occupation_measure(const std::vector<Trajectory1D>& trajs, const AlphaSpec& alpha,
                          double w, double eta, double K) {
  if (eta <= 0 || K <= 0)
    throw NumericalError("occupation_measure: eta and K must be positive");
  int hits = 0;
  for (const Trajectory1D& traj : trajs) {
    double occ = 0;
    for (const VecD& v : traj.V)
      if (std::abs(alpha.alpha(v) - w) <= eta) occ += traj.dt;
    if (occ >= K * eta) ++hits;
  }
  return trajs.empty() ? 0.0 : double(hits) / double(trajs.size());
}

AdaptiveDelta adaptive_delta(const ResonanceDecomposition& base,
                             const ResonanceDecomposition& shifted, double base_delta,
                             double f_inf_norm, double C, DeltaRateMode mode,
                             std::size_t n_grid, double dt) {
  AdaptiveDelta out;
  out.base_delta = base_delta;
  out.mode = mode;
  out.values.assign(n_grid, base_delta);
  const double rate = C * f_inf_norm;
  if (mode == DeltaRateMode::Constant) {
    double total = base.total_occupation() + shifted.total_occupation();
    for (std::size_t k = 0; k < n_grid; ++k)
      out.values[k] = base_delta + rate * (dt * double(k)) * total;
    return out;
  }
  // cumulative: delta_bar(t) = |delta| + rate * sum_n (l_n(t) + l_n^d(t))
  std::vector<double> occ(n_grid, 0.0);
  auto add = [&](const ResonanceDecomposition& d) {
    for (const auto& list : d.intervals)
      for (const Interval& iv : list)
        for (std::size_t k = 0; k < n_grid; ++k) {
          double t = dt * double(k);
          occ[k] += std::clamp(t - iv.t0, 0.0, iv.length());
        }
  };
  add(base);
  add(shifted);
  for (std::size_t k = 0; k < n_grid; ++k) out.values[k] = base_delta + rate * occ[k];
  return out;
}

double functional_R(const std::vector<Paired1D>& pairs,
                    const std::vector<AdaptiveDelta>& delta_bars) {
  if (pairs.size() != delta_bars.size())
    throw NumericalError("functional_R: pairs/delta_bars size mismatch");
  double acc = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    double db = delta_bars[i].final_value();
    acc += std::log1p((pairs[i].sup_dx2() + pairs[i].int_dv2()) / (db * db));
  }
  return pairs.empty() ? 0.0 : acc / double(pairs.size());
}

std::vector<ScalingRow> run_scaling_study_1d(const ScalingStudy1DConfig& cfg) {
  if (cfg.delta_grid.size() < 4)
    throw ConfigError("scaling_study_1d: need at least 4 delta values", {"delta_grid"});
  AlphaSpec alpha = identity_alpha();
  MultiSpeedForce force = default_multi_speed_force(cfg.n_speeds, cfg.gamma);
  const double f_inf = force.sup_norm_bound();
  std::vector<double> a_n;
  for (int n = 1; n <= cfg.n_speeds; ++n) a_n.push_back(std::pow(double(n), -cfg.gamma / 2));

  std::vector<ScalingRow> rows;
  std::vector<std::pair<double, double>> fit_pts;
  for (std::size_t di = 0; di < cfg.delta_grid.size(); ++di) {
    const double delta = cfg.delta_grid[di];
    const double xi = std::log(1.0 / delta);
    const double eta = std::pow(xi, -1.0 / 8.0);
    ScalingRow row;
    row.delta = delta;
    row.eta = eta;
    row.under_resolved = cfg.dt > a_n.back() * eta / 10.0;

    std::vector<Paired1D> pairs;
    std::vector<AdaptiveDelta> dbars;
    std::vector<double> dbar_T;
    double sum_l = 0;
    int max_k = 0;
    pairs.reserve(std::size_t(cfg.n_pairs));
    for (int i = 0; i < cfg.n_pairs; ++i) {
      // common random numbers across the delta grid: pair i shares its base
      // point for every delta, so the delta trend is not drowned in ensemble
      // resampling noise
      SplitRng rng(cfg.seed, std::uint64_t(i));
      double x0 = rng.uniform(cfg.x_lo, cfg.x_hi);
      VecD v0;
      v0.dim = 1;
      v0[0] = rng.uniform(cfg.v_lo, cfg.v_hi);
      // delta direction uniform on the circle of (dx, dv)
      double ang = rng.uniform(0, 2 * 3.14159265358979323846);
      VecD d2;
      d2.dim = 1;
      d2[0] = delta * std::sin(ang);
      Paired1D pair = pair_trajectories_1d(alpha, force, x0, v0, delta * std::cos(ang),
                                           d2, cfg.T, cfg.dt);
      ResonanceDecomposition rb =
          decompose_resonances(pair.base, alpha, force.speeds, eta, a_n);
      ResonanceDecomposition rs =
          decompose_resonances(pair.shifted, alpha, force.speeds, eta, a_n);
      AdaptiveDelta db = adaptive_delta(rb, rs, delta, f_inf, cfg.rate_constant, cfg.mode,
                                        pair.base.X.size(), cfg.dt);
      sum_l += rb.total_occupation();
      max_k = std::max(max_k, rb.max_count());
      dbar_T.push_back(db.final_value());
      pairs.push_back(std::move(pair));
      dbars.push_back(std::move(db));
    }
    row.R = functional_R(pairs, dbars);
    std::nth_element(dbar_T.begin(), dbar_T.begin() + dbar_T.size() / 2, dbar_T.end());
    row.median_delta_bar_T = dbar_T[dbar_T.size() / 2];
    row.mean_sum_l_n = sum_l / double(cfg.n_pairs);
    row.max_k_n = max_k;

    fit_pts.emplace_back(xi, std::max(row.R, 1e-300));
    if (fit_pts.size() >= 3) {
      ScalingFit fit = fit_scaling(fit_pts, FitModel::Power);
      row.fitted_exponent_so_far = fit.slope;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace roughflow
