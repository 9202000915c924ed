#include "aggpatch/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "aggpatch/error.hpp"

namespace aggpatch {

Interval::Interval(double left, double right) : left_(left), right_(right) {
  if (!std::isfinite(left) || !std::isfinite(right) || !(left < right)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "interval requires left < right, got (" << left << ", " << right << ")";
    throw DomainError(msg.str());
  }
}

IntervalUnion IntervalUnion::normalize(std::span<const Interval> raw) {
  std::vector<Interval> sorted(raw.begin(), raw.end());
  std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) {
    return a.left() < b.left() || (a.left() == b.left() && a.right() < b.right());
  });

  IntervalUnion out;
  out.intervals_.reserve(sorted.size());
  for (const Interval& iv : sorted) {
    if (!out.intervals_.empty() && iv.left() <= out.intervals_.back().right()) {
      Interval& last = out.intervals_.back();
      if (iv.right() > last.right()) last = Interval(last.left(), iv.right());
    } else {
      out.intervals_.push_back(iv);
    }
  }

  out.prefix_.resize(out.intervals_.size() + 1);
  out.prefix_[0] = 0.0;
  for (std::size_t i = 0; i < out.intervals_.size(); ++i) {
    out.prefix_[i + 1] = out.prefix_[i] + out.intervals_[i].length();
  }
  return out;
}

double IntervalUnion::mass_left_of(double x) const noexcept {
  // first interval with right >= x; everything before it lies fully left of x
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Interval& iv, double v) { return iv.right() < v; });
  const auto i = static_cast<std::size_t>(it - intervals_.begin());
  double mass = prefix_[i];
  if (it != intervals_.end() && it->left() < x) mass += x - it->left();
  return mass;
}

Interval IntervalUnion::hull() const {
  if (intervals_.empty()) throw DomainError("hull of an empty interval union");
  return Interval(intervals_.front().left(), intervals_.back().right());
}

std::size_t IntervalUnion::locate(double x) const noexcept {
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Interval& iv, double v) { return iv.right() < v; });
  if (it != intervals_.end() && it->left() <= x) {
    return static_cast<std::size_t>(it - intervals_.begin());
  }
  return intervals_.size();
}

Truncation truncate(const IntervalUnion& u, const TruncationPolicy& policy) {
  std::vector<std::size_t> order(u.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // longest first; ties by position so the result is deterministic
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return u[a].length() > u[b].length();
  });

  Truncation out;
  std::vector<Interval> kept;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const Interval& iv = u[order[rank]];
    if (rank < policy.max_intervals && iv.length() >= policy.min_length) {
      kept.push_back(iv);
    } else {
      ++out.dropped_count;
      out.dropped_mass += iv.length();
    }
  }
  out.set = IntervalUnion::normalize(kept);
  return out;
}

CompactSet::CompactSet(Interval hull, IntervalUnion gaps)
    : hull_(hull), gaps_(std::move(gaps)) {
  if (!gaps_.empty()) {
    const Interval span = gaps_.hull();
    if (!(hull_.left() < span.left() && span.right() < hull_.right())) {
      throw DomainError("compact set gaps must lie strictly inside the hull");
    }
  }
}

double CompactSet::mass_left_of(double x) const noexcept {
  if (x <= hull_.left()) return 0.0;
  const double clipped = std::min(x, hull_.right());
  return (clipped - hull_.left()) - gaps_.mass_left_of(clipped);
}

std::vector<ClosedInterval> CompactSet::pieces() const {
  std::vector<ClosedInterval> out;
  out.reserve(gaps_.size() + 1);
  double lo = hull_.left();
  for (const Interval& g : gaps_.intervals()) {
    out.push_back({lo, g.left()});
    lo = g.right();
  }
  out.push_back({lo, hull_.right()});
  return out;
}

}  // namespace aggpatch
