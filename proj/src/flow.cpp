#include "aggpatch/flow.hpp"

#include <algorithm>
#include <string>

#include "aggpatch/error.hpp"

namespace aggpatch {
namespace {

void require_time(double t, bool allow_one) {
  const bool ok = allow_one ? (t >= 0.0 && t <= 1.0) : (t >= 0.0 && t < 1.0);
  if (!ok) {
    throw DomainError(allow_one ? "time must lie in [0, 1], got " + std::to_string(t)
                                : "time must lie in [0, 1) (blow-up at t = 1), got " +
                                      std::to_string(t));
  }
}

}  // namespace

double trajectory(const IntervalUnion& omega0, double alpha, double t) {
  require_time(t, true);
  return alpha + velocity(omega0, alpha) * t;
}

double trajectory(const CompactSet& k0, double alpha, double t) {
  require_time(t, true);
  return alpha + velocity(k0, alpha) * t;
}

double FlowSnapshot::measure() const noexcept {
  double total = 0.0;
  for (const EvolvedCell& c : cells) total += c.length;
  return (1.0 - t) * total;
}

double FlowSnapshot::mass_left_of(double x) const noexcept {
  const auto& ivs = support.intervals();
  if (ivs.size() != cells.size()) {
    // support merged two cells (roundoff at extreme t); fall back to lengths
    return density_level * support.mass_left_of(x);
  }
  auto it = std::lower_bound(ivs.begin(), ivs.end(), x,
                             [](const Interval& iv, double v) { return iv.right() < v; });
  const auto i = static_cast<std::size_t>(it - ivs.begin());
  double mass = 0.0;
  for (std::size_t j = 0; j < i; ++j) mass += cells[j].length;
  if (it != ivs.end() && it->left() < x) {
    mass += std::min(density_level * (x - it->left()), cells[i].length);
  }
  return mass;
}

FlowSnapshot evolve(const IntervalUnion& omega0, double t) {
  require_time(t, false);
  if (omega0.empty()) throw DomainError("cannot evolve an empty patch");

  const double half_mass = 0.5 * omega0.measure();
  FlowSnapshot snap;
  snap.t = t;
  snap.density_level = 1.0 / (1.0 - t);
  snap.cells.reserve(omega0.size());

  std::vector<Interval> moved;
  moved.reserve(omega0.size());
  for (std::size_t i = 0; i < omega0.size(); ++i) {
    const Interval& iv = omega0[i];
    const double v_left = half_mass - omega0.mass_before(i);
    snap.cells.push_back({iv.left() + v_left, -v_left, iv.length()});
    moved.emplace_back(trajectory(omega0, iv.left(), t), trajectory(omega0, iv.right(), t));
  }
  snap.support = IntervalUnion::normalize(moved);
  return snap;
}

double velocity(const FlowSnapshot& snap, double x) {
  double total = 0.0;
  for (const EvolvedCell& c : snap.cells) total += c.length;
  return 0.5 * total - snap.mass_left_of(x);
}

CompactSnapshot evolve(const CompactSet& k0, double t) {
  require_time(t, false);
  const double half_mass = 0.5 * k0.measure();
  const Interval& hull = k0.hull();

  std::vector<Interval> moved;
  moved.reserve(k0.gaps().size());
  for (const Interval& g : k0.gaps().intervals()) {
    const double v = velocity(k0, g.left());
    moved.emplace_back(g.left() + v * t, g.right() + v * t);
  }
  CompactSnapshot snap{t, 1.0 / (1.0 - t),
                       CompactSet(Interval(hull.left() + half_mass * t, hull.right() - half_mass * t),
                                  IntervalUnion::normalize(moved))};
  return snap;
}

}  // namespace aggpatch
