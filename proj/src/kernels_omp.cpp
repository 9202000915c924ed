#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "aggpatch/analysis.hpp"
#include "aggpatch/flow.hpp"
#include "aggpatch/inverse_compact.hpp"
#include "aggpatch/kernels.hpp"

namespace aggpatch::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace omp {

void particle_velocities(std::span<const double> sorted, double weight, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(sorted.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    std::ptrdiff_t before = k;
    std::ptrdiff_t after = n - 1 - k;
    // only tied particles need a search for the ends of their run
    const bool tied = (k > 0 && sorted[k - 1] == sorted[k]) || (k + 1 < n && sorted[k + 1] == sorted[k]);
    if (tied) {
      const auto run = std::equal_range(sorted.begin(), sorted.end(), sorted[k]);
      before = run.first - sorted.begin();
      after = sorted.end() - run.second;
    }
    out[k] = 0.5 * weight * static_cast<double>(static_cast<long long>(after - before));
  }
}

void trajectory_grid(const IntervalUnion& omega0, std::span<const double> alphas,
                     std::span<const double> times, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(alphas.size());
  const std::size_t m = times.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double v = velocity(omega0, alphas[i]);
    for (std::size_t j = 0; j < m; ++j) out[i * m + j] = alphas[i] + v * times[j];
  }
}

void pushforward_cdf_batch(const CompactSet& k0, std::span<const double> ys,
                           std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(ys.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = pushforward_cdf(k0, ys[i]);
}

void box_counts(const CompactSet& set, std::span<const double> ladder,
                std::span<std::size_t> out) {
  const auto n = static_cast<std::ptrdiff_t>(ladder.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = box_count(set, ladder[i]);
}

}  // namespace omp
}  // namespace aggpatch::kernels
