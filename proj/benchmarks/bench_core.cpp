#include <benchmark/benchmark.h>

#include "roughflow/field.hpp"
#include "roughflow/flow3d.hpp"
#include "roughflow/kirchhoff.hpp"
#include "roughflow/lightcone.hpp"
#include "roughflow/maximal.hpp"
#include "roughflow/rng.hpp"
#include "roughflow/sphere_rule.hpp"

using namespace roughflow;

namespace {

Force make_rough_force() {
  VectorField3 f = rough_vector_field();
  return [f](double, const Vec3& x, const Vec3&) { return f.eval(x); };
}

void bm_sphere_rule_integrate(benchmark::State& state) {
  SphereRule rule = build_rule(int(state.range(0)));
  auto f = [](const Vec3& w) { return w.x * w.x * w.y * w.y + w.z; };
  for (auto _ : state) {
    double acc = 0;
    for (std::size_t k = 0; k < rule.size(); ++k) acc += rule.weights[k] * f(rule.nodes[k]);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bm_sphere_rule_integrate)->Arg(14)->Arg(30);

void bm_rough_field_eval(benchmark::State& state) {
  VectorField3 f = rough_vector_field();
  SplitRng rng(1, 0);
  Vec3 x = rng.in_box({-1, -1, -1}, {1, 1, 1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.eval(x));
    x.x += 1e-6;
  }
}
BENCHMARK(bm_rough_field_eval);

void bm_trajectory_integration(benchmark::State& state) {
  Force force = make_rough_force();
  const double dt = 1.0 / double(state.range(0));
  for (auto _ : state) {
    Trajectory traj =
        integrate_trajectory(force, {{0.1, -0.2, 0.3}, {0.4, 0.5, -0.6}}, 1.0, dt);
    benchmark::DoNotOptimize(traj.X.back());
  }
}
BENCHMARK(bm_trajectory_integration)->Arg(200)->Arg(1000);

void bm_pair_q_integrand(benchmark::State& state) {
  Force force = make_rough_force();
  for (auto _ : state) {
    PairedTrajectory pair = pair_trajectories(force, {{0.1, 0.0, -0.2}, {0.3, 0.4, 0.1}},
                                              {1e-4, 0, 0}, {0, 1e-4, 0}, 1.0, 1e-2);
    benchmark::DoNotOptimize(q_integrand(pair, 1e-4, true));
  }
}
BENCHMARK(bm_pair_q_integrand);

void bm_invert_cone(benchmark::State& state) {
  Force force = make_rough_force();
  Trajectory traj =
      integrate_trajectory(force, {{0.1, -0.2, 0.3}, {0.4, 0.5, -0.6}}, 2.0, 1e-3);
  Vec3 z = traj.X.back() + Vec3{0.3, -0.4, 0.5};
  for (auto _ : state) {
    ConeChart c = invert_cone(traj, z, 1e-10);
    benchmark::DoNotOptimize(c.s);
  }
}
BENCHMARK(bm_invert_cone);

void bm_kirchhoff_eval(benchmark::State& state) {
  KirchhoffField kf(smooth_gaussian_force(), build_rule(int(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_field(kf, 1.5, {0.2, -0.1, 0.3}));
  }
}
BENCHMARK(bm_kirchhoff_eval)->Arg(8)->Arg(30);

void bm_spherical_max(benchmark::State& state) {
  ScalarField3 f = rough_field();
  GridField3 g = make_grid([&f](const Vec3& x) { return std::abs(f.eval(x)); },
                           {-1.5, -1.5, -1.5}, 3.0 / 48, 49, 49, 49);
  SphereRule rule = build_rule(10);
  std::vector<double> radii = geometric_grid(0.1, 0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spherical_max(g, {0.2, -0.1, 0.3}, radii, rule).value);
  }
}
BENCHMARK(bm_spherical_max);

}  // namespace

BENCHMARK_MAIN();
