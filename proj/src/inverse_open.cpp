#include "aggpatch/inverse_open.hpp"

#include <vector>

#include "aggpatch/error.hpp"

namespace aggpatch {

OpenConstruction inverse_open(const AtomicMeasure& mu1) {
  if (mu1.empty()) throw DomainError("inverse construction needs at least one atom");
  const double half_mass = 0.5 * mu1.total_mass();

  OpenConstruction out;
  std::vector<Interval> raw;
  raw.reserve(mu1.size());
  double mass_left = 0.0;
  for (const Atom& atom : mu1.atoms()) {
    const double a = atom.position + (mass_left - half_mass);
    raw.emplace_back(a, a + atom.mass);
    if (raw.size() > 1 && !(raw[raw.size() - 2].right() < a)) out.degenerate = true;
    mass_left += atom.mass;
  }
  out.initial_set = IntervalUnion::normalize(raw);
  return out;
}

}  // namespace aggpatch
