#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aggpatch/error.hpp"
#include "aggpatch/interval_set.hpp"
#include "aggpatch/kernels.hpp"
#include "aggpatch/skeleton.hpp"

// Particle discretization of the 1-D aggregation equation with kernel
// -sign(x)/2, kept independent of the closed-form characteristics.
namespace aggpatch::oracle {

struct ParticleSystem {
  std::vector<double> positions;  // ascending
  double weight = 0.0;            // common particle mass, |Omega0| / N
};

// N cell midpoints split across the intervals in proportion to their length
// (largest-remainder rounding). Throws DomainError for N = 0 or an empty set.
ParticleSystem discretize(const IntervalUnion& omega0, std::size_t n);

// (w/2) (#right - #left), sign(0) = 0.
double particle_velocity(const ParticleSystem& p, std::size_t k);

enum class Scheme { kEuler, kRK4 };

struct IntegrationOptions {
  double dt = 0.0;
  double t_final = 0.0;
  Scheme scheme = Scheme::kRK4;
  // Record a frame every this many steps; 0 keeps only the first and last.
  std::size_t record_every = 0;
  kernels::Backend backend = kernels::Backend::kOpenMP;
};

// dt = (1 - T) / 100, RK4.
IntegrationOptions default_options(double t_final);

struct Frame {
  std::size_t step = 0;
  double t = 0.0;
  std::vector<double> positions;
  std::vector<double> velocities;
};

struct TrajectoryTable {
  double weight = 0.0;
  std::size_t steps = 0;
  std::vector<Frame> frames;
};

// Two particles swapped order during a step.
class CollisionError : public DomainError {
 public:
  CollisionError(std::size_t step, std::size_t particle);
  std::size_t step() const noexcept { return step_; }
  std::size_t particle() const noexcept { return particle_; }

 private:
  std::size_t step_;
  std::size_t particle_;
};

// Throws DomainError on dt <= 0 or T outside [0, 1); CollisionError on an
// order violation.
TrajectoryTable integrate(const ParticleSystem& p, const IntegrationOptions& options);

// Greedy left-to-right chaining: a particle joins the current group when it
// is within tol of the previous one. Atom = (group mean, weight * size).
AtomicMeasure cluster(std::span<const double> positions, double weight, double tol);

}  // namespace aggpatch::oracle
