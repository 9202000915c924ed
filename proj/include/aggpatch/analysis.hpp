#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aggpatch/interval_set.hpp"

namespace aggpatch {

// Number of boxes [a + k eps, a + (k+1) eps] (a = hull left end) meeting the
// set. A box is skipped when it lies inside one gap; its interior is shrunk
// by 1e-9 eps first so grid and gap endpoints that agree up to roundoff
// count as touching.
std::size_t box_count(const CompactSet& set, double eps);

// Same grid anchored at the smallest point.
std::size_t box_count(std::span<const double> points, double eps);

struct DimensionFit {
  double dimension = 0.0;  // least-squares slope of log N against log(1/eps)
  double residual = 0.0;   // RMS deviation of log N from the fitted line
  std::vector<double> eps;
  std::vector<std::size_t> counts;
};

// Throws DomainError with fewer than three scales, a nonpositive scale, or a
// scale below `finest_resolvable` (the set's enumeration depth is too shallow
// to say anything about boxes that small).
DimensionFit box_dimension(const CompactSet& set, std::span<const double> ladder,
                           double finest_resolvable = 0.0);
DimensionFit box_dimension(std::span<const double> points, std::span<const double> ladder);

// Estimate restricted to the fine end of the ladder: entry i fits the scales
// ladder[i..] (ladder ordered coarse to fine), for every i with at least three
// scales left. For a finite point set the counts saturate and the profile
// falls to 0.
std::vector<double> dimension_profile(std::span<const double> points,
                                      std::span<const double> ladder);

// Least-squares fit over precomputed counts.
DimensionFit fit_dimension(std::span<const double> ladder, std::span<const std::size_t> counts);

// eps_k = base * ratio^k for k in [first, last]
std::vector<double> geometric_ladder(double base, double ratio, int first, int last);

}  // namespace aggpatch
