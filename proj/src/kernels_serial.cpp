#include <algorithm>
#include <cmath>

#include "aggpatch/analysis.hpp"
#include "aggpatch/error.hpp"
#include "aggpatch/flow.hpp"
#include "aggpatch/inverse_compact.hpp"
#include "aggpatch/kernels.hpp"

namespace aggpatch::kernels {

void particle_velocities_direct(std::span<const double> positions, double weight,
                                std::span<double> out) {
  const std::size_t n = positions.size();
  for (std::size_t k = 0; k < n; ++k) {
    long long balance = 0;
    for (std::size_t j = 0; j < n; ++j) {
      balance += (positions[j] > positions[k]) - (positions[j] < positions[k]);
    }
    out[k] = 0.5 * weight * static_cast<double>(balance);
  }
}

namespace serial {

void particle_velocities(std::span<const double> sorted, double weight, std::span<double> out) {
  const std::size_t n = sorted.size();
  std::size_t run_begin = 0;
  while (run_begin < n) {
    std::size_t run_end = run_begin + 1;
    while (run_end < n && sorted[run_end] == sorted[run_begin]) ++run_end;
    const auto balance =
        static_cast<long long>(n - run_end) - static_cast<long long>(run_begin);
    for (std::size_t k = run_begin; k < run_end; ++k) {
      out[k] = 0.5 * weight * static_cast<double>(balance);
    }
    run_begin = run_end;
  }
}

void trajectory_grid(const IntervalUnion& omega0, std::span<const double> alphas,
                     std::span<const double> times, std::span<double> out) {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double v = velocity(omega0, alphas[i]);
    for (std::size_t j = 0; j < times.size(); ++j) {
      out[i * times.size() + j] = alphas[i] + v * times[j];
    }
  }
}

void pushforward_cdf_batch(const CompactSet& k0, std::span<const double> ys,
                           std::span<double> out) {
  for (std::size_t i = 0; i < ys.size(); ++i) out[i] = pushforward_cdf(k0, ys[i]);
}

void box_counts(const CompactSet& set, std::span<const double> ladder,
                std::span<std::size_t> out) {
  for (std::size_t i = 0; i < ladder.size(); ++i) out[i] = box_count(set, ladder[i]);
}

}  // namespace serial

namespace {

template <class T>
void require_same_size(std::size_t in, std::span<T> out) {
  if (out.size() != in) throw DomainError("kernel output span has the wrong size");
}

}  // namespace

void particle_velocities(std::span<const double> sorted, double weight, std::span<double> out,
                         Backend backend) {
  require_same_size(sorted.size(), out);
  if (backend == Backend::kOpenMP) {
    omp::particle_velocities(sorted, weight, out);
  } else {
    serial::particle_velocities(sorted, weight, out);
  }
}

void trajectory_grid(const IntervalUnion& omega0, std::span<const double> alphas,
                     std::span<const double> times, std::span<double> out, Backend backend) {
  require_same_size(alphas.size() * times.size(), out);
  for (double t : times) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("trajectory times must lie in [0, 1]");
  }
  if (backend == Backend::kOpenMP) {
    omp::trajectory_grid(omega0, alphas, times, out);
  } else {
    serial::trajectory_grid(omega0, alphas, times, out);
  }
}

void pushforward_cdf_batch(const CompactSet& k0, std::span<const double> ys,
                           std::span<double> out, Backend backend) {
  require_same_size(ys.size(), out);
  if (backend == Backend::kOpenMP) {
    omp::pushforward_cdf_batch(k0, ys, out);
  } else {
    serial::pushforward_cdf_batch(k0, ys, out);
  }
}

void box_counts(const CompactSet& set, std::span<const double> ladder,
                std::span<std::size_t> out, Backend backend) {
  require_same_size(ladder.size(), out);
  if (backend == Backend::kOpenMP) {
    omp::box_counts(set, ladder, out);
  } else {
    serial::box_counts(set, ladder, out);
  }
}

}  // namespace aggpatch::kernels
