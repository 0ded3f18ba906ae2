#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sgm/field.hpp"
#include "sgm/mild.hpp"
#include "sgm/norms.hpp"
#include "sgm/solver.hpp"
#include "sgm/spectral.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

sgm::GridField sine_field(std::size_t n, double L) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j)
    v[j] = std::sin(2.0 * kPi * j / static_cast<double>(n)) +
           0.3 * std::sin(6.0 * kPi * j / static_cast<double>(n));
  return sgm::GridField(std::move(v), L);
}

sgm::Trajectory sine_trajectory(std::size_t n, std::size_t frames, double L,
                                double T) {
  std::vector<sgm::GridField> fs;
  std::vector<double> ts;
  for (std::size_t i = 0; i < frames; ++i) {
    const double t = T * static_cast<double>(i) / static_cast<double>(frames - 1);
    sgm::GridField f = sine_field(n, L);
    f *= std::exp(-t);
    fs.push_back(std::move(f));
    ts.push_back(t);
  }
  return sgm::Trajectory(std::move(fs), std::move(ts));
}

void BM_derivative(benchmark::State& state) {
  const auto f = sine_field(static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sgm::derivative(f, 1));
}
BENCHMARK(BM_derivative)->Arg(128)->Arg(512)->Arg(2048);

void BM_mixed_norm(benchmark::State& state) {
  const auto traj =
      sine_trajectory(static_cast<std::size_t>(state.range(0)), 65, 1.0, 0.5);
  const sgm::MixedExponents exps(5.0, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(sgm::mixed_norm(traj, exps));
}
BENCHMARK(BM_mixed_norm)->Arg(128)->Arg(512);

void BM_solver_step(benchmark::State& state) {
  sgm::SolverConfig c;
  c.n = static_cast<std::size_t>(state.range(0));
  c.dt = 1e-4;
  c.t_final = 1e-2;
  const sgm::Stepper stepper(c);
  sgm::GridField u = sine_field(c.n, c.period);
  u *= 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(u = stepper.step(u));
}
BENCHMARK(BM_solver_step)->Arg(128)->Arg(512)->Arg(2048);

void BM_duhamel_series(benchmark::State& state) {
  const auto src =
      sine_trajectory(static_cast<std::size_t>(state.range(0)), 65, 1.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sgm::duhamel_series(src, 3));
}
BENCHMARK(BM_duhamel_series)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
