// Serial reference vs OpenMP kernels. Only one core in CI, so the numbers
// there mostly show the OpenMP overhead.
#include <benchmark/benchmark.h>

#include <vector>

#include "aggpatch/inverse_compact.hpp"
#include "aggpatch/kernels.hpp"
#include "aggpatch/oracle.hpp"

namespace {

using aggpatch::kernels::Backend;

aggpatch::IntervalUnion two_intervals() {
  return aggpatch::IntervalUnion::normalize({aggpatch::Interval(0, 1), aggpatch::Interval(2, 3)});
}

void BM_ParticleVelocities(benchmark::State& state, Backend backend) {
  const auto p = aggpatch::oracle::discretize(two_intervals(), state.range(0));
  std::vector<double> v(p.positions.size());
  for (auto _ : state) {
    aggpatch::kernels::particle_velocities(p.positions, p.weight, v, backend);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrajectoryGrid(benchmark::State& state, Backend backend) {
  const auto omega = two_intervals();
  std::vector<double> alphas(state.range(0));
  for (std::size_t i = 0; i < alphas.size(); ++i) alphas[i] = 3.0 * i / alphas.size();
  std::vector<double> times;
  for (int k = 1; k <= 20; ++k) times.push_back(1.0 - 1.0 / (1 << k));
  std::vector<double> out(alphas.size() * times.size());
  for (auto _ : state) {
    aggpatch::kernels::trajectory_grid(omega, alphas, times, out, backend);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_Pushforward(benchmark::State& state, Backend backend) {
  const aggpatch::MiddleCantor cantor(1.0 / 3.0);
  const auto mu = aggpatch::cantor_measure(cantor, 2.0, 30);
  const auto built = aggpatch::inverse_compact(cantor, mu, static_cast<int>(state.range(0)),
                                               aggpatch::ResidualPolicy::kCollapseCells);
  std::vector<double> ys(1000);
  for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = (i + 0.5) / ys.size();
  std::vector<double> out(ys.size());
  for (auto _ : state) {
    aggpatch::kernels::pushforward_cdf_batch(built.initial_set, ys, out, backend);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_ParticleVelocities, serial, Backend::kSerial)->Range(1 << 10, 1 << 16);
BENCHMARK_CAPTURE(BM_ParticleVelocities, omp, Backend::kOpenMP)->Range(1 << 10, 1 << 16);
BENCHMARK_CAPTURE(BM_TrajectoryGrid, serial, Backend::kSerial)->Range(1 << 8, 1 << 14);
BENCHMARK_CAPTURE(BM_TrajectoryGrid, omp, Backend::kOpenMP)->Range(1 << 8, 1 << 14);
BENCHMARK_CAPTURE(BM_Pushforward, serial, Backend::kSerial)->DenseRange(6, 10, 2);
BENCHMARK_CAPTURE(BM_Pushforward, omp, Backend::kOpenMP)->DenseRange(6, 10, 2);

BENCHMARK_MAIN();
