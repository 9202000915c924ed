#pragma once

#include <concepts>
#include <vector>

#include "aggpatch/interval_set.hpp"

namespace aggpatch {

// Anything with a total mass and a left-mass function |S ∩ (-inf, x)|.
template <class S>
concept PatchSupport = requires(const S& s, double x) {
  { s.measure() } -> std::convertible_to<double>;
  { s.mass_left_of(x) } -> std::convertible_to<double>;
};

// v0(x) = 1/2 (|S ∩ (x, inf)| - |S ∩ (-inf, x)|) = M/2 - |S ∩ (-inf, x)|.
// Nonincreasing, 1-Lipschitz, +M/2 left of the support and -M/2 right of it.
template <PatchSupport S>
double velocity(const S& support, double x) {
  return 0.5 * support.measure() - support.mass_left_of(x);
}

// Straight characteristic X(alpha, t) = alpha + v0(alpha) t for t in [0, 1].
double trajectory(const IntervalUnion& omega0, double alpha, double t);
double trajectory(const CompactSet& k0, double alpha, double t);

// One evolved interval, stored relative to the point it collapses to:
// at time t it occupies anchor + (1 - t) * [offset, offset + length].
struct EvolvedCell {
  double anchor = 0.0;
  double offset = 0.0;
  double length = 0.0;
};

// rho(., t) = chi_{Omega_t} / (1 - t) for an open patch.
struct FlowSnapshot {
  double t = 0.0;
  double density_level = 1.0;
  IntervalUnion support;  // endpoint images X(alpha_i, t), X(beta_i, t)
  std::vector<EvolvedCell> cells;

  // |Omega_t| from the exact cell lengths, (1 - t) * sum |I_i|.
  double measure() const noexcept;

  // mu_t((-inf, x)) = density * |Omega_t ∩ (-inf, x)|.
  double mass_left_of(double x) const noexcept;
};

// Throws DomainError unless 0 <= t < 1 and omega0 is nonempty.
FlowSnapshot evolve(const IntervalUnion& omega0, double t);

// Velocity field of the evolved density (mass-weighted, not set-length).
double velocity(const FlowSnapshot& snap, double x);

// Evolved compact patch: gaps translate rigidly, K shrinks by (1 - t).
struct CompactSnapshot {
  double t = 0.0;
  double density_level = 1.0;
  CompactSet support;

  // mu_t((-inf, y]) computed from the evolved set.
  double cdf(double y) const noexcept { return density_level * support.mass_left_of(y); }
};

CompactSnapshot evolve(const CompactSet& k0, double t);

}  // namespace aggpatch
