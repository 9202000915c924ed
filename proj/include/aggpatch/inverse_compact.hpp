#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "aggpatch/interval_set.hpp"

namespace aggpatch {

// Measure on a hull [c, d] described by its CDF x -> mu((-inf, x]).
// `modulus` bounds the mass of any cell the oracle cannot resolve at its
// resolution depth.
class CdfMeasure {
 public:
  using Oracle = std::function<double(double)>;

  CdfMeasure(Interval hull, double total_mass, Oracle cdf, int resolution_depth, double modulus);

  const Interval& hull() const noexcept { return hull_; }
  double total_mass() const noexcept { return total_mass_; }
  double half_mass() const noexcept { return 0.5 * total_mass_; }
  int resolution_depth() const noexcept { return resolution_depth_; }
  double modulus() const noexcept { return modulus_; }

  // 0 left of the hull, total_mass from the right end on.
  double cdf(double x) const;

 private:
  Interval hull_;
  double total_mass_;
  Oracle cdf_;
  int resolution_depth_;
  double modulus_;
};

// Enumerates the open gaps of U1 = [c, d] \ K1 level by level.
class GapGenerator {
 public:
  virtual ~GapGenerator() = default;
  virtual Interval hull() const = 0;
  // All gaps of levels 1..depth, sorted left to right.
  virtual std::vector<Interval> gaps(int depth) const = 0;
};

// Self-similar Cantor set: every cell keeps two end pieces of relative
// length `ratio` and loses the open middle. ratio = (1 - alpha) / 2 for the
// middle-alpha set; 1/3 is the triadic set.
class MiddleCantor final : public GapGenerator {
 public:
  explicit MiddleCantor(double ratio, Interval hull = Interval(0.0, 1.0));
  static MiddleCantor from_middle_fraction(double alpha, Interval hull = Interval(0.0, 1.0));

  double ratio() const noexcept { return ratio_; }
  double dimension() const;  // log 2 / log(1 / ratio)

  Interval hull() const override { return hull_; }
  std::vector<Interval> gaps(int depth) const override;

 private:
  double ratio_;
  double scale_;  // 1 / ratio, snapped to an integer when it is one
  Interval hull_;

  friend CdfMeasure cantor_measure(const MiddleCantor&, double, int);
};

// Natural self-similar measure (each cell splits its mass in halves), CDF
// by the digit algorithm to `resolution_depth` levels.
CdfMeasure cantor_measure(const MiddleCantor& set, double total_mass, int resolution_depth);

// Gaps given explicitly, one list per level.
class ExplicitGaps final : public GapGenerator {
 public:
  ExplicitGaps(Interval hull, std::vector<std::vector<Interval>> levels);
  Interval hull() const override { return hull_; }
  std::vector<Interval> gaps(int depth) const override;

 private:
  Interval hull_;
  std::vector<std::vector<Interval>> levels_;
};

// Lebesgue measure of [c, d] not covered by the gaps up to `depth`.
double residual_length(const GapGenerator& gen, int depth);

// v = 1/2 (mu[m, d] - mu[c, m]) = L - cdf(m) at the gap midpoint m.
// Throws DomainError if the gap is not inside the measure's hull.
double gap_velocity(const CdfMeasure& mu1, const Interval& gap);

enum class ResidualPolicy {
  kKeep,           // K0 = [c - L, d + L] minus translated gaps; |K0| = 2L + residual
  kCollapseCells,  // also remove each unresolved cell's interior; |K0| = 2L
};

struct CompactConstruction {
  CompactSet initial_set;
  std::vector<Interval> target_gaps;   // gaps of U1 used, sorted
  std::vector<double> gap_velocities;  // one per target gap
  double residual_length = 0.0;        // unresolved Lebesgue measure of K1
  double residual_mass = 0.0;          // largest mu1 mass of an unresolved cell
  ResidualPolicy policy = ResidualPolicy::kKeep;
};

// Compact K0 whose patch evolution collapses onto mu1: each gap of U1 is
// translated by minus its velocity, the hull widened by L on both sides.
// Throws DomainError on hull mismatch or when translated gaps overlap.
CompactConstruction inverse_compact(const GapGenerator& k1, const CdfMeasure& mu1, int depth,
                                    ResidualPolicy policy = ResidualPolicy::kKeep);

// X1(x) = lim_{t -> 1} X(x, t) for the patch chi_{K0}, with L = |K0| / 2.
double limit_map(const CompactSet& k0, double x);

// Bracketing ends of X1^{-1}(y): lower <= inf, upper >= sup (up to tol).
struct Fiber {
  double lower = 0.0;
  double upper = 0.0;
};

inline constexpr double kBisectionTolerance = 1e-12;

Fiber fiber(const CompactSet& k0, double y, double tol = kBisectionTolerance);

// ((X1)_# mu0)((-inf, y]) with mu0 = Lebesgue on K0.
double pushforward_cdf(const CompactSet& k0, double y);

// Image of K0 under X1 at the construction's resolution: hull
// [X1(a), X1(b)] minus the images of the translated target gaps.
CompactSet skeleton_image(const CompactConstruction& construction);

}  // namespace aggpatch
