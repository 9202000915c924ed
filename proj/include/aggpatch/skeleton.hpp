#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aggpatch/interval_set.hpp"

namespace aggpatch {

struct Atom {
  double position = 0.0;
  double mass = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

// Finite sum of Dirac masses with strictly increasing positions and
// strictly positive masses.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;

  // Sorts by position. Throws DomainError on duplicate positions,
  // nonpositive or non-finite masses.
  static AtomicMeasure from_atoms(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  double total_mass() const noexcept;

  // Smallest closed interval containing every atom. Throws when empty.
  ClosedInterval hull() const;

 private:
  std::vector<Atom> atoms_;
};

// Blow-up limit of chi_{Omega0}: one atom per interval at
// x_i = alpha_i + v0(alpha_i) with mass |I_i|. Throws on an empty set.
AtomicMeasure skeleton(const IntervalUnion& omega0);

// [a + L, b - L] with [a, b] the hull and 2L = |Omega0|.
ClosedInterval skeleton_bounds(const IntervalUnion& omega0);

// Atoms closer than this are reported, never merged.
inline constexpr double kNearCoincidence = 1e-12;

struct SkeletonReport {
  AtomicMeasure measure;
  ClosedInterval bounds;
  // index i means atoms i and i + 1 are closer than kNearCoincidence
  std::vector<std::size_t> near_coincident;
};

SkeletonReport skeleton_report(const IntervalUnion& omega0);

}  // namespace aggpatch
