#include "aggpatch/inverse_compact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "aggpatch/error.hpp"

namespace aggpatch {
namespace {

void require_depth(int depth) {
  if (depth < 0) throw DomainError("depth must be nonnegative");
  if (depth > 26) throw DomainError("depth above 26 enumerates more gaps than supported");
}

}  // namespace

CdfMeasure::CdfMeasure(Interval hull, double total_mass, Oracle cdf, int resolution_depth,
                       double modulus)
    : hull_(hull),
      total_mass_(total_mass),
      cdf_(std::move(cdf)),
      resolution_depth_(resolution_depth),
      modulus_(modulus) {
  if (!(total_mass > 0.0) || !std::isfinite(total_mass)) {
    throw DomainError("measure total mass must be positive");
  }
  if (!cdf_) throw DomainError("measure needs a cdf oracle");
  if (resolution_depth < 1) throw DomainError("resolution depth must be positive");
}

double CdfMeasure::cdf(double x) const {
  if (x < hull_.left()) return 0.0;
  if (x >= hull_.right()) return total_mass_;
  return cdf_(x);
}

MiddleCantor::MiddleCantor(double ratio, Interval hull) : ratio_(ratio), hull_(hull) {
  if (!(ratio > 0.0 && ratio < 0.5)) throw DomainError("cantor ratio must lie in (0, 1/2)");
  scale_ = 1.0 / ratio;
  const double rounded = std::round(scale_);
  if (std::abs(scale_ - rounded) < 1e-9) {
    scale_ = rounded;
    ratio_ = 1.0 / rounded;
  }
}

MiddleCantor MiddleCantor::from_middle_fraction(double alpha, Interval hull) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("middle fraction must lie in (0, 1)");
  return MiddleCantor(0.5 * (1.0 - alpha), hull);
}

double MiddleCantor::dimension() const { return std::log(2.0) / std::log(scale_); }

std::vector<Interval> MiddleCantor::gaps(int depth) const {
  require_depth(depth);
  std::vector<Interval> out;
  if (depth == 0) return out;
  out.reserve((std::size_t{1} << depth) - 1);

  // in-order walk: left child, own gap, right child
  struct Frame {
    double lo, hi;
    int level;
    bool expanded;
  };
  std::vector<Frame> stack{{hull_.left(), hull_.right(), 1, false}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const double piece = (f.hi - f.lo) / scale_;
    const double gap_lo = f.lo + piece;
    const double gap_hi = f.hi - piece;
    if (f.expanded) {
      out.emplace_back(gap_lo, gap_hi);
      continue;
    }
    if (f.level < depth) stack.push_back({gap_hi, f.hi, f.level + 1, false});
    stack.push_back({f.lo, f.hi, f.level, true});
    if (f.level < depth) stack.push_back({f.lo, gap_lo, f.level + 1, false});
  }
  return out;
}

CdfMeasure cantor_measure(const MiddleCantor& set, double total_mass, int resolution_depth) {
  const double c = set.hull().left();
  const double width = set.hull().length();
  const double scale = set.scale_;
  const double keep = 1.0 / scale;
  auto oracle = [=](double x) {
    // digit expansion: left piece -> 0, right piece -> 1, middle gap -> stop
    double u = (x - c) / width;
    double acc = 0.0;
    double weight = 0.5;
    for (int level = 1; level <= resolution_depth; ++level) {
      if (u < keep) {
        u *= scale;
      } else if (u > 1.0 - keep) {
        acc += weight;
        u = (u - (1.0 - keep)) * scale;
      } else {
        return total_mass * (acc + weight);
      }
      weight *= 0.5;
    }
    // unresolved cell: report its midpoint mass
    return total_mass * (acc + weight);
  };
  return CdfMeasure(set.hull(), total_mass, oracle, resolution_depth,
                    total_mass * std::ldexp(1.0, -resolution_depth));
}

ExplicitGaps::ExplicitGaps(Interval hull, std::vector<std::vector<Interval>> levels)
    : hull_(hull), levels_(std::move(levels)) {
  std::vector<Interval> all;
  for (const auto& level : levels_) all.insert(all.end(), level.begin(), level.end());
  const IntervalUnion u = IntervalUnion::normalize(all);
  if (u.size() != all.size()) throw DomainError("explicit gaps must be pairwise disjoint");
  CompactSet check(hull_, u);  // throws if a gap leaves the hull
  (void)check;
}

std::vector<Interval> ExplicitGaps::gaps(int depth) const {
  require_depth(depth);
  std::vector<Interval> out;
  for (int level = 0; level < depth && level < static_cast<int>(levels_.size()); ++level) {
    out.insert(out.end(), levels_[level].begin(), levels_[level].end());
  }
  std::sort(out.begin(), out.end(),
            [](const Interval& a, const Interval& b) { return a.left() < b.left(); });
  return out;
}

double residual_length(const GapGenerator& gen, int depth) {
  double covered = 0.0;
  for (const Interval& g : gen.gaps(depth)) covered += g.length();
  return gen.hull().length() - covered;
}

double gap_velocity(const CdfMeasure& mu1, const Interval& gap) {
  const Interval& h = mu1.hull();
  if (!(h.left() < gap.left() && gap.right() < h.right())) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "gap (" << gap.left() << ", " << gap.right() << ") is not inside the hull ["
        << h.left() << ", " << h.right() << "]";
    throw DomainError(msg.str());
  }
  const double below = mu1.cdf(gap.midpoint());
  return 0.5 * ((mu1.total_mass() - below) - below);
}

CompactConstruction inverse_compact(const GapGenerator& k1, const CdfMeasure& mu1, int depth,
                                    ResidualPolicy policy) {
  const Interval c_d = k1.hull();
  if (!(c_d == mu1.hull())) throw DomainError("gap generator and measure hulls differ");
  const double half_mass = mu1.half_mass();

  CompactConstruction out{CompactSet(Interval(c_d.left() - half_mass, c_d.right() + half_mass),
                                     IntervalUnion{}),
                          k1.gaps(depth), {}, 0.0, 0.0, policy};
  out.gap_velocities.resize(out.target_gaps.size());
  // independent per gap
  for (std::size_t j = 0; j < out.target_gaps.size(); ++j) {
    out.gap_velocities[j] = gap_velocity(mu1, out.target_gaps[j]);
  }

  // unresolved cells of K1 between consecutive target gaps
  std::vector<Interval> removed;
  removed.reserve(2 * out.target_gaps.size() + 1);
  double cell_lo = c_d.left();
  double mass_lo = 0.0;
  auto close_cell = [&](double cell_hi, double mass_hi) {
    out.residual_length += cell_hi - cell_lo;
    out.residual_mass = std::max(out.residual_mass, mass_hi - mass_lo);
    if (policy == ResidualPolicy::kCollapseCells && cell_lo < cell_hi) {
      const double v = half_mass - 0.5 * (mass_lo + mass_hi);
      removed.emplace_back(cell_lo - v, cell_hi - v);
    }
  };
  for (std::size_t j = 0; j < out.target_gaps.size(); ++j) {
    const Interval& g = out.target_gaps[j];
    const double v = out.gap_velocities[j];
    const double mass_at_gap = half_mass - v;
    close_cell(g.left(), mass_at_gap);
    removed.emplace_back(g.left() - v, g.right() - v);
    cell_lo = g.right();
    mass_lo = mass_at_gap;
  }
  close_cell(c_d.right(), mu1.total_mass());

  for (std::size_t i = 1; i < removed.size(); ++i) {
    if (removed[i - 1].right() > removed[i].left()) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "translated gaps overlap: (" << removed[i - 1].left() << ", "
          << removed[i - 1].right() << ") and (" << removed[i].left() << ", "
          << removed[i].right() << "); cdf and gaps are inconsistent";
      throw DomainError(msg.str());
    }
  }
  out.initial_set = CompactSet(out.initial_set.hull(), IntervalUnion::normalize(removed));
  return out;
}

double limit_map(const CompactSet& k0, double x) {
  const Interval& h = k0.hull();
  const double half_mass = 0.5 * k0.measure();
  if (x <= h.left()) return x + half_mass;
  if (x >= h.right()) return x - half_mass;
  // x + v(x) = a + L + |gaps ∩ (a, x)|, monotone without cancellation
  return h.left() + half_mass + k0.gap_mass_left_of(x);
}

namespace {

// smallest x with X1(x) > y, approached from above
double fiber_upper(const CompactSet& k0, double y, double tol) {
  const double a = k0.hull().left();
  const double b = k0.hull().right();
  if (limit_map(k0, a) > y) return a;
  if (limit_map(k0, b) <= y) return b;
  double lo = a, hi = b;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    (limit_map(k0, mid) <= y ? lo : hi) = mid;
  }
  return hi;
}

// largest x with X1(x) < y, approached from below
double fiber_lower(const CompactSet& k0, double y, double tol) {
  const double a = k0.hull().left();
  const double b = k0.hull().right();
  if (limit_map(k0, a) >= y) return a;
  if (limit_map(k0, b) < y) return b;
  double lo = a, hi = b;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    (limit_map(k0, mid) < y ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

Fiber fiber(const CompactSet& k0, double y, double tol) {
  return {fiber_lower(k0, y, tol), fiber_upper(k0, y, tol)};
}

double pushforward_cdf(const CompactSet& k0, double y) {
  if (y < limit_map(k0, k0.hull().left())) return 0.0;
  if (y >= limit_map(k0, k0.hull().right())) return k0.measure();
  return k0.mass_left_of(fiber_upper(k0, y, kBisectionTolerance));
}

CompactSet skeleton_image(const CompactConstruction& construction) {
  const CompactSet& k0 = construction.initial_set;
  std::vector<Interval> images;
  images.reserve(construction.target_gaps.size());
  for (std::size_t j = 0; j < construction.target_gaps.size(); ++j) {
    const Interval& g = construction.target_gaps[j];
    const double v = construction.gap_velocities[j];
    images.emplace_back(limit_map(k0, g.left() - v), limit_map(k0, g.right() - v));
  }
  return CompactSet(Interval(limit_map(k0, k0.hull().left()), limit_map(k0, k0.hull().right())),
                    IntervalUnion::normalize(images));
}

}  // namespace aggpatch
