#include "aggpatch/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aggpatch/error.hpp"

namespace aggpatch {

AtomicMeasure AtomicMeasure::from_atoms(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.position)) throw DomainError("atom position must be finite");
    if (!std::isfinite(a.mass) || !(a.mass > 0.0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "atom mass must be positive, got " << a.mass << " at " << a.position;
      throw DomainError(msg.str());
    }
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.position < b.position; });
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (!(atoms[i - 1].position < atoms[i].position)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "duplicate atom position " << atoms[i].position;
      throw DomainError(msg.str());
    }
  }
  AtomicMeasure out;
  out.atoms_ = std::move(atoms);
  return out;
}

double AtomicMeasure::total_mass() const noexcept {
  double total = 0.0;
  for (const Atom& a : atoms_) total += a.mass;
  return total;
}

ClosedInterval AtomicMeasure::hull() const {
  if (atoms_.empty()) throw DomainError("hull of an empty atomic measure");
  return {atoms_.front().position, atoms_.back().position};
}

AtomicMeasure skeleton(const IntervalUnion& omega0) {
  if (omega0.empty()) throw DomainError("skeleton of an empty set");
  std::vector<Atom> atoms;
  atoms.reserve(omega0.size());
  const double half_mass = 0.5 * omega0.measure();
  for (std::size_t i = 0; i < omega0.size(); ++i) {
    const Interval& iv = omega0[i];
    // v0 at the left endpoint only counts intervals strictly before it
    atoms.push_back({iv.left() + (half_mass - omega0.mass_before(i)), iv.length()});
  }
  return AtomicMeasure::from_atoms(std::move(atoms));
}

ClosedInterval skeleton_bounds(const IntervalUnion& omega0) {
  const Interval h = omega0.hull();
  const double half_mass = 0.5 * omega0.measure();
  return {h.left() + half_mass, h.right() - half_mass};
}

SkeletonReport skeleton_report(const IntervalUnion& omega0) {
  SkeletonReport report{skeleton(omega0), skeleton_bounds(omega0), {}};
  const auto atoms = report.measure.atoms();
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
    if (atoms[i + 1].position - atoms[i].position < kNearCoincidence) {
      report.near_coincident.push_back(i);
    }
  }
  return report;
}

}  // namespace aggpatch
