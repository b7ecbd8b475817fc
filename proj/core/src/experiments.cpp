#include "roughflow/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "roughflow/errors.hpp"
#include "roughflow/field.hpp"
#include "roughflow/fit.hpp"
#include "roughflow/flow1d.hpp"
#include "roughflow/flow3d.hpp"
#include "roughflow/grid_io.hpp"
#include "roughflow/kirchhoff.hpp"
#include "roughflow/lightcone.hpp"
#include "roughflow/maximal.hpp"
#include "roughflow/rng.hpp"

namespace roughflow {

using nlohmann::json;

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

json config_echo(const Config& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.entries()) j[k] = v;
  return j;
}

std::string join_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

Force select_force(const std::string& name) {
  if (name == "zero")
    return [](double, const Vec3&, const Vec3&) { return Vec3{}; };
  if (name == "smooth") {
    VectorField3 f = smooth_gaussian_force();
    return [f](double, const Vec3& x, const Vec3&) { return f.eval(x); };
  }
  if (name == "rough") {
    VectorField3 f = rough_vector_field();
    return [f](double, const Vec3& x, const Vec3&) { return f.eval(x); };
  }
  throw ConfigError("unknown force '" + name + "' (zero|smooth|rough)", {"force"});
}

json fit_to_json(const ScalingFit& fit) {
  json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["residual"] = fit.residual;
  if (!fit.psi_ratios.empty()) {
    j["psi_ratios"] = fit.psi_ratios;
    j["sublinear"] = fit.sublinear;
  }
  return j;
}

// --- qdelta3d --------------------------------------------------------------

ExperimentOutput run_qdelta3d(const Config& cfg) {
  const std::vector<double> deltas = cfg.get_real_list("delta_grid");
  const std::vector<double> Ks =
      cfg.has("k_grid") ? cfg.get_real_list("k_grid") : std::vector<double>{8.0};
  const double T = cfg.get_real("T", 1.0);
  const double dt = cfg.get_real("dt", 1e-3);
  const int n_pairs = int(cfg.get_int("n_pairs", 1000));
  const std::uint64_t seed = std::uint64_t(cfg.get_int("seed", 1));
  const double xb = cfg.get_real("x_box", 1.0);
  const double vb = cfg.get_real("v_box", 1.0);
  const std::string force_name = cfg.get_string("force", "rough");

  if (dt <= 0 || T <= 0) throw ConfigError("T and dt must be positive", {"T", "dt"});
  if (n_pairs < 1) throw ConfigError("n_pairs must be >= 1", {"n_pairs"});
  for (double d : deltas)
    if (!(d > 0 && d < 1))
      throw ConfigError("delta values must lie in (0,1)", {"delta_grid"});

  Force force = select_force(force_name);
  FieldEvaluator G = [&force](double s, const Vec3& x) { return force(s, x, Vec3{}); };
  const Vec3 lo{-xb, -xb, -xb}, hi{xb, xb, xb}, vlo{-vb, -vb, -vb}, vhi{vb, vb, vb};
  const double volume = std::pow(2 * xb, 3) * std::pow(2 * vb, 3);

  std::string csv =
      "delta,K,Q,Q_K,omega_K_fraction,I_delta,psi_estimate,dt,n_samples,seed\n";
  std::vector<std::pair<double, double>> psi_points;       // (-log d, Q/T)
  std::vector<std::pair<double, double>> cheb_points;      // (K, excluded)
  std::vector<std::pair<double, double>> i_delta_points;   // (-log d, I at max K)

  for (double delta : deltas) {
    double sum_qc = 0;
    const std::size_t np = std::size_t(n_pairs);
    std::vector<double> qu(np), ii(np);
    std::vector<std::pair<double, double>> paths(np);
    for (int i = 0; i < n_pairs; ++i) {
      SplitRng rng(seed, std::uint64_t(i));
      PhasePoint p0{rng.in_box(lo, hi), rng.in_box(vlo, vhi)};
      Vec3 dx = rng.unit_vec3(), dv = rng.unit_vec3();
      double split = rng.uniform();
      Vec3 d1 = dx * (delta * std::sqrt(split));
      Vec3 d2 = dv * (delta * std::sqrt(1 - split));
      PairedTrajectory pair = pair_trajectories(force, p0, d1, d2, T, dt);
      sum_qc += q_integrand(pair, delta, true);
      qu[std::size_t(i)] = q_integrand(pair, delta, false);
      ii[std::size_t(i)] = i_delta_integrand(pair, G);
      paths[std::size_t(i)] = {force_path_integral(force, pair.base),
                               force_path_integral(force, pair.shifted)};
    }
    const double weight = volume / double(n_pairs);
    const double Q = weight * sum_qc;
    double last_I = 0;
    for (double K : Ks) {
      OmegaK trunc = truncate_omega_K(paths, K);
      double sum_qu = 0, sum_i = 0;
      for (std::size_t idx : trunc.kept) {
        sum_qu += qu[idx];
        sum_i += ii[idx];
      }
      const double QK = weight * sum_qu;
      const double I = weight * sum_i;
      last_I = I;
      csv += join_row({format_real(delta), format_real(K), format_real(Q),
                       format_real(QK), format_real(trunc.excluded_fraction),
                       format_real(I), format_real(Q / T), format_real(dt),
                       std::to_string(n_pairs), std::to_string(seed)});
      if (delta == deltas.front()) cheb_points.push_back({K, trunc.excluded_fraction});
    }
    psi_points.push_back({-std::log(delta), Q / T});
    i_delta_points.push_back({-std::log(delta), last_I});
  }

  json summary;
  summary["version"] = kVersionStamp;
  summary["experiment"] = "qdelta3d";
  summary["config"] = config_echo(cfg);
  json checks = json::array();
  std::sort(psi_points.begin(), psi_points.end());
  if (psi_points.size() >= 3) {
    ScalingFit psi = fit_scaling(psi_points, FitModel::Psi);
    summary["psi_fit"] = fit_to_json(psi);
    checks.push_back({{"name", "psi_sublinear"}, {"pass", psi.sublinear}});
  }
  std::sort(i_delta_points.begin(), i_delta_points.end());
  if (i_delta_points.size() >= 3 && i_delta_points.front().second > 0) {
    summary["i_delta_fit"] = fit_to_json(fit_scaling(i_delta_points, FitModel::Power));
  }
  std::sort(cheb_points.begin(), cheb_points.end());
  if (cheb_points.size() >= 3 && cheb_points.back().second > 0) {
    ScalingFit cheb = fit_scaling(cheb_points, FitModel::Power);
    summary["chebyshev_fit"] = fit_to_json(cheb);
    checks.push_back({{"name", "chebyshev_decay"}, {"pass", cheb.slope < 0}});
  }
  summary["checks"] = checks;
  return {csv, summary.dump(2) + "\n"};
}

// --- rdelta1d --------------------------------------------------------------

ExperimentOutput run_rdelta1d(const Config& cfg) {
  ScalingStudy1DConfig sc;
  sc.delta_grid = cfg.get_real_list("delta_grid");
  sc.n_speeds = int(cfg.get_int("n_speeds", 64));
  sc.gamma = cfg.get_real("gamma", 2.5);
  sc.T = cfg.get_real("T", 1.0);
  sc.dt = cfg.get_real("dt", 2.5e-4);
  sc.n_pairs = int(cfg.get_int("n_pairs", 500));
  sc.x_lo = cfg.get_real("x_lo", -1.0);
  sc.x_hi = cfg.get_real("x_hi", 1.0);
  sc.v_lo = cfg.get_real("v_lo", -1.0);
  sc.v_hi = cfg.get_real("v_hi", 1.0);
  sc.rate_constant = cfg.get_real("rate_constant", 1.0);
  sc.mode = cfg.get_string("rate_mode", "cumulative") == "constant"
                ? DeltaRateMode::Constant
                : DeltaRateMode::Cumulative;
  sc.seed = std::uint64_t(cfg.get_int("seed", 42));

  if (sc.dt <= 0 || sc.T <= 0) throw ConfigError("T and dt must be positive", {"T", "dt"});
  for (double d : sc.delta_grid)
    if (!(d > 0 && d < 1))
      throw ConfigError("delta values must lie in (0,1)", {"delta_grid"});

  std::vector<ScalingRow> rows = run_scaling_study_1d(sc);

  std::string csv =
      "delta,eta,R,median_delta_bar_T,sum_l_n,max_k_n,fitted_exponent_so_far\n";
  std::vector<std::pair<double, double>> pts;
  for (const ScalingRow& r : rows) {
    csv += join_row({format_real(r.delta), format_real(r.eta), format_real(r.R),
                     format_real(r.median_delta_bar_T), format_real(r.mean_sum_l_n),
                     std::to_string(r.max_k_n),
                     format_real(r.fitted_exponent_so_far)});
    if (r.R > 0) pts.push_back({-std::log(r.delta), r.R});
  }

  json summary;
  summary["version"] = kVersionStamp;
  summary["experiment"] = "rdelta1d";
  summary["config"] = config_echo(cfg);
  json checks = json::array();
  std::sort(pts.begin(), pts.end());
  if (pts.size() >= 3) {
    ScalingFit fit = fit_scaling(pts, FitModel::Power);
    summary["r_delta_fit"] = fit_to_json(fit);
    checks.push_back({{"name", "r_delta_exponent_below_0.9"}, {"pass", fit.slope <= 0.9}});
  }
  bool median_decreasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].median_delta_bar_T >= rows[i - 1].median_delta_bar_T)
      median_decreasing = false;
  checks.push_back({{"name", "median_delta_bar_decreasing"}, {"pass", median_decreasing}});
  summary["checks"] = checks;
  return {csv, summary.dump(2) + "\n"};
}

// --- dispersion ------------------------------------------------------------

ExperimentOutput run_dispersion(const Config& cfg) {
  const std::string field_name = cfg.get_string("field", "ball");
  const int order = int(cfg.get_int("order", 20));
  const int n_samples = int(cfg.get_int("n_samples", 2000));
  const std::uint64_t seed = std::uint64_t(cfg.get_int("seed", 1234));
  std::vector<double> s_grid = cfg.has("s_grid")
                                   ? cfg.get_real_list("s_grid")
                                   : std::vector<double>{4, 8, 16, 32};

  ScalarField3 g;
  if (field_name == "ball")
    g = ball_indicator(Vec3{}, cfg.get_real("radius", 1.0));
  else if (field_name == "gaussian")
    g = gaussian_bump(Vec3{}, cfg.get_real("radius", 1.0), 1.0);
  else if (field_name == "rough")
    g = rough_field();
  else
    throw ConfigError("unknown field '" + field_name + "' (ball|gaussian|rough)",
                      {"field"});

  SphereRule rule = build_rule(order);
  DispersionProfile prof = dispersion_profile(g, rule, s_grid, n_samples, seed);

  std::string csv = "s,l2_norm,under_resolved\n";
  for (const DispersionPoint& p : prof.points)
    csv += join_row(
        {format_real(p.s), format_real(p.l2_norm), p.under_resolved ? "1" : "0"});

  json summary;
  summary["version"] = kVersionStamp;
  summary["experiment"] = "dispersion";
  summary["config"] = config_echo(cfg);
  summary["slope"] = prof.slope;
  summary["intercept"] = prof.intercept;
  summary["checks"] = json::array(
      {{{"name", "decay_slope_below_-0.6"}, {"pass", prof.slope <= -0.6}}});
  return {csv, summary.dump(2) + "\n"};
}

// --- maximal_scan ----------------------------------------------------------

ExperimentOutput run_maximal_scan(const Config& cfg) {
  GridField3 g;
  if (cfg.has("grid")) {
    g = load_grid(cfg.get_string("grid"));
  } else {
    const std::int64_t n = cfg.get_int("grid_n", 48);
    const double half = cfg.get_real("half_width", 1.5);
    const double spacing = 2 * half / double(n - 1);
    ScalarField3 f = rough_field();
    g = make_grid([&f](const Vec3& x) { return std::abs(f.eval(x)); },
                  Vec3{-half, -half, -half}, spacing, n, n, n);
  }
  const int n_probe = int(cfg.get_int("n_probe", 50));
  const int order = int(cfg.get_int("order", 14));
  const std::uint64_t seed = std::uint64_t(cfg.get_int("seed", 17));
  const double r_min = cfg.get_real("r_min", 2 * g.spacing);
  const double r_max = cfg.get_real("r_max", 0.5);

  SphereRule rule = build_rule(order);
  std::vector<double> radii = geometric_grid(r_min, r_max);
  Vec3 lo = g.origin + Vec3{r_max, r_max, r_max};
  Vec3 hi = g.upper_corner() - Vec3{r_max, r_max, r_max};

  std::string csv = "probe,x,y,z,m_spherical,m_shell,ratio\n";
  double ratio_sum = 0;
  int ratio_count = 0;
  for (int i = 0; i < n_probe; ++i) {
    SplitRng rng(seed, std::uint64_t(i));
    Vec3 x = rng.in_box(lo, hi);
    MaxResult ms = spherical_max(g, x, radii, rule);
    MaxResult sh = shell_max(g, x, radii, 4, rule);
    double ratio = ms.value > 0 ? sh.value / ms.value : 0;
    if (ms.value > 0) {
      ratio_sum += ratio;
      ++ratio_count;
    }
    csv += join_row({std::to_string(i), format_real(x.x), format_real(x.y),
                     format_real(x.z), format_real(ms.value), format_real(sh.value),
                     format_real(ratio)});
  }

  json summary;
  summary["version"] = kVersionStamp;
  summary["experiment"] = "maximal_scan";
  summary["config"] = config_echo(cfg);
  double mean_ratio = ratio_count ? ratio_sum / ratio_count : 0;
  summary["mean_shell_to_spherical_ratio"] = mean_ratio;
  summary["checks"] = json::array(
      {{{"name", "shell_dominates_spherical"}, {"pass", mean_ratio >= 1.0}}});
  return {csv, summary.dump(2) + "\n"};
}

// --- cone_verify -----------------------------------------------------------

ExperimentOutput run_cone_verify(const Config& cfg) {
  const int n_traj = int(cfg.get_int("n_traj", 5));
  const int n_z = int(cfg.get_int("n_z", 200));
  const double T = cfg.get_real("T", 2.0);
  const double dt = cfg.get_real("dt", 1e-3);
  const int order = int(cfg.get_int("order", 14));
  const int n_volume = int(cfg.get_int("n_volume_samples", 20000));
  const std::uint64_t seed = std::uint64_t(cfg.get_int("seed", 31));

  VectorField3 f = smooth_gaussian_force();
  Force force = [f](double, const Vec3& x, const Vec3&) { return f.eval(x); };
  SphereRule rule = build_rule(order);

  std::string csv =
      "trajectory,max_roundtrip_err,coverage,outward_violation,volume_rel_err\n";
  double worst_roundtrip = 0, worst_coverage = 1, worst_violation = 0, worst_vol = 0;
  for (int k = 0; k < n_traj; ++k) {
    SplitRng rng(seed, std::uint64_t(k));
    PhasePoint p0{rng.in_box({-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}),
                  rng.in_box({-1, -1, -1}, {1, 1, 1})};
    Trajectory traj = integrate_trajectory(force, p0, T, dt);
    std::size_t ti = traj.steps();
    double max_rt = 0;
    SplitRng zrng(seed, std::uint64_t(1000 + k));
    for (int j = 0; j < n_z; ++j) {
      double t = dt * double(ti);
      Vec3 z = traj.X[ti] + zrng.unit_vec3() * (t * std::cbrt(zrng.uniform()) * 0.98);
      try {
        ConeChart c = invert_cone(traj, z, 1e-12);
        Vec3 back = traj.position(c.s) - c.omega * c.s;
        max_rt = std::max(max_rt, norm(back - z));
      } catch (const DomainError&) {
      }
    }
    ConeDomainReport dom = cone_domain_check(traj, ti, n_z, rule, seed + 7);
    double vol = cone_volume_identity(traj, ti, n_volume, seed + 11);
    double t = dt * double(ti);
    double vol_rel = std::abs(vol - 4 * M_PI * t) / (4 * M_PI * t);
    csv += join_row({std::to_string(k), format_real(max_rt),
                     format_real(dom.coverage_fraction),
                     format_real(dom.max_outward_violation), format_real(vol_rel)});
    worst_roundtrip = std::max(worst_roundtrip, max_rt);
    worst_coverage = std::min(worst_coverage, dom.coverage_fraction);
    worst_violation = std::max(worst_violation, dom.max_outward_violation);
    worst_vol = std::max(worst_vol, vol_rel);
  }

  json summary;
  summary["version"] = kVersionStamp;
  summary["experiment"] = "cone_verify";
  summary["config"] = config_echo(cfg);
  summary["worst_roundtrip_err"] = worst_roundtrip;
  summary["worst_coverage"] = worst_coverage;
  summary["worst_outward_violation"] = worst_violation;
  summary["worst_volume_rel_err"] = worst_vol;
  summary["checks"] = json::array(
      {{{"name", "roundtrip_below_1e-8"}, {"pass", worst_roundtrip < 1e-8}},
       {{"name", "coverage_at_least_0.999"}, {"pass", worst_coverage >= 0.999}},
       {{"name", "outward_violation_at_most_dt"}, {"pass", worst_violation <= dt}}});
  return {csv, summary.dump(2) + "\n"};
}

// --- field_check -----------------------------------------------------------

ExperimentOutput run_field_check(const Config& cfg) {
  GridField3 g = load_grid(cfg.get_string("grid"));
  double vmin = g.samples.empty() ? 0 : g.samples.front();
  double vmax = vmin;
  bool all_finite = true;
  for (double v : g.samples) {
    if (!std::isfinite(v)) all_finite = false;
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  double l1 = grid_lp_norm(g, 1.0), l2 = grid_lp_norm(g, 2.0);

  std::string csv = "stat,value\n";
  csv += join_row({"nx", std::to_string(g.nx)});
  csv += join_row({"ny", std::to_string(g.ny)});
  csv += join_row({"nz", std::to_string(g.nz)});
  csv += join_row({"spacing", format_real(g.spacing)});
  csv += join_row({"min", format_real(vmin)});
  csv += join_row({"max", format_real(vmax)});
  csv += join_row({"l1_norm", format_real(l1)});
  csv += join_row({"l2_norm", format_real(l2)});
  csv += join_row({"all_finite", all_finite ? "1" : "0"});

  json summary;
  summary["version"] = kVersionStamp;
  summary["experiment"] = "field_check";
  summary["config"] = config_echo(cfg);
  summary["dims"] = {g.nx, g.ny, g.nz};
  summary["spacing"] = g.spacing;
  summary["l1_norm"] = l1;
  summary["l2_norm"] = l2;
  summary["checks"] =
      json::array({{{"name", "all_samples_finite"}, {"pass", all_finite}}});
  if (!all_finite) throw NumericalError("field_check: grid contains non-finite samples");
  return {csv, summary.dump(2) + "\n"};
}

}  // namespace

ExperimentOutput run_experiment(const Config& cfg) {
  const std::string kind = cfg.get_string("experiment");
  if (kind == "qdelta3d") return run_qdelta3d(cfg);
  if (kind == "rdelta1d") return run_rdelta1d(cfg);
  if (kind == "dispersion") return run_dispersion(cfg);
  if (kind == "maximal_scan") return run_maximal_scan(cfg);
  if (kind == "cone_verify") return run_cone_verify(cfg);
  if (kind == "field_check") return run_field_check(cfg);
  throw ConfigError("unknown experiment kind '" + kind + "'", {"experiment"});
}

std::vector<std::string> run_experiment_to_files(const Config& cfg) {
  const std::string prefix = cfg.get_string("output");
  ExperimentOutput out = run_experiment(cfg);
  std::string csv_path = prefix + ".csv", json_path = prefix + ".json";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw ConfigError("cannot write " + csv_path, {"output"});
  csv << out.csv;
  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw ConfigError("cannot write " + json_path, {"output"});
  js << out.summary_json;
  return {csv_path, json_path};
}

std::vector<std::pair<double, double>> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV: " + path);
  std::vector<std::pair<double, double>> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) continue;
    try {
      out.push_back({std::stod(a), std::stod(b)});
    } catch (const std::exception&) {
      throw NumericalError("non-numeric CSV row: " + line);
    }
  }
  return out;
}

}  // namespace roughflow
