#pragma once

#include <cstddef>
#include <span>

#include "aggpatch/interval_set.hpp"

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels_serial.cpp and an OpenMP version in kernels_omp.cpp with the same
// results (bitwise: every output element is computed by the same expression).
namespace aggpatch::kernels {

enum class Backend { kSerial, kOpenMP };

// v_k = (w/2) (#{j : x_j > x_k} - #{j : x_j < x_k}) for positions sorted
// ascending; equal positions exert no force on each other.
void particle_velocities(std::span<const double> sorted_positions, double weight,
                         std::span<double> out, Backend backend);

// Direct O(N^2) sum of (w/2) sign(x_j - x_k); any ordering. Test reference.
void particle_velocities_direct(std::span<const double> positions, double weight,
                                std::span<double> out);

// out[i * times.size() + j] = X(alphas[i], times[j]).
void trajectory_grid(const IntervalUnion& omega0, std::span<const double> alphas,
                     std::span<const double> times, std::span<double> out, Backend backend);

// out[i] = pushforward_cdf(k0, ys[i]).
void pushforward_cdf_batch(const CompactSet& k0, std::span<const double> ys,
                           std::span<double> out, Backend backend);

// out[i] = box_count(set, ladder[i]).
void box_counts(const CompactSet& set, std::span<const double> ladder,
                std::span<std::size_t> out, Backend backend);

// Threads OpenMP would use; 1 when built without OpenMP.
int max_threads();

namespace serial {
void particle_velocities(std::span<const double>, double, std::span<double>);
void trajectory_grid(const IntervalUnion&, std::span<const double>, std::span<const double>,
                     std::span<double>);
void pushforward_cdf_batch(const CompactSet&, std::span<const double>, std::span<double>);
void box_counts(const CompactSet&, std::span<const double>, std::span<std::size_t>);
}  // namespace serial

namespace omp {
void particle_velocities(std::span<const double>, double, std::span<double>);
void trajectory_grid(const IntervalUnion&, std::span<const double>, std::span<const double>,
                     std::span<double>);
void pushforward_cdf_batch(const CompactSet&, std::span<const double>, std::span<double>);
void box_counts(const CompactSet&, std::span<const double>, std::span<std::size_t>);
}  // namespace omp

}  // namespace aggpatch::kernels
