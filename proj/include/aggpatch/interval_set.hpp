#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace aggpatch {

// Open interval (left, right) with left < right.
class Interval {
 public:
  // Throws DomainError unless left < right (both finite).
  Interval(double left, double right);

  double left() const noexcept { return left_; }
  double right() const noexcept { return right_; }
  double length() const noexcept { return right_ - left_; }
  double midpoint() const noexcept { return left_ + 0.5 * (right_ - left_); }
  bool contains(double x) const noexcept { return left_ < x && x < right_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double left_;
  double right_;
};

// Closed interval [lo, hi] with lo <= hi; may be a single point.
struct ClosedInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x, double slack = 0.0) const noexcept {
    return lo - slack <= x && x <= hi + slack;
  }
  double length() const noexcept { return hi - lo; }
};

// Finite union of pairwise disjoint open intervals, sorted, with strictly
// positive gaps between consecutive members. Touching or overlapping input
// intervals are merged. Endpoint comparisons are exact.
class IntervalUnion {
 public:
  IntervalUnion() { prefix_.push_back(0.0); }

  static IntervalUnion normalize(std::span<const Interval> raw);
  static IntervalUnion normalize(std::initializer_list<Interval> raw) {
    return normalize(std::span<const Interval>(raw.begin(), raw.size()));
  }

  std::span<const Interval> intervals() const noexcept { return intervals_; }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }
  std::size_t size() const noexcept { return intervals_.size(); }
  bool empty() const noexcept { return intervals_.empty(); }

  double measure() const noexcept { return prefix_.back(); }

  // |U ∩ (-inf, x)|
  double mass_left_of(double x) const noexcept;

  // Total length of the intervals strictly before interval i.
  double mass_before(std::size_t i) const { return prefix_.at(i); }

  // Smallest interval containing the union. Throws DomainError when empty.
  Interval hull() const;

  // Index of the interval whose closure contains x, or size() if none.
  std::size_t locate(double x) const noexcept;

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
    return a.intervals_ == b.intervals_;
  }

 private:
  std::vector<Interval> intervals_;
  std::vector<double> prefix_;  // prefix_[i] = total length of intervals [0, i)
};

inline IntervalUnion normalize(std::span<const Interval> raw) {
  return IntervalUnion::normalize(raw);
}

// Finite stand-in for a countable union: keep at most max_intervals of the
// longest intervals and drop anything shorter than min_length.
struct TruncationPolicy {
  std::size_t max_intervals = 1u << 20;
  double min_length = 0.0;
};

struct Truncation {
  IntervalUnion set;
  std::size_t dropped_count = 0;
  double dropped_mass = 0.0;
};

Truncation truncate(const IntervalUnion& u, const TruncationPolicy& policy);

// [a, b] minus a union of open gaps lying strictly inside (a, b).
class CompactSet {
 public:
  // Throws DomainError if a gap touches or leaves the hull.
  CompactSet(Interval hull, IntervalUnion gaps);

  const Interval& hull() const noexcept { return hull_; }
  const IntervalUnion& gaps() const noexcept { return gaps_; }

  double measure() const noexcept { return hull_.length() - gaps_.measure(); }

  // |K ∩ (-inf, x)|
  double mass_left_of(double x) const noexcept;

  // |gaps ∩ (-inf, x)|; monotone and free of cancellation.
  double gap_mass_left_of(double x) const noexcept { return gaps_.mass_left_of(x); }

  // Closed connected components of K, left to right.
  std::vector<ClosedInterval> pieces() const;

 private:
  Interval hull_;
  IntervalUnion gaps_;
};

}  // namespace aggpatch
