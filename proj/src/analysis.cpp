#include "aggpatch/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aggpatch/error.hpp"

namespace aggpatch {
namespace {

void require_scale(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("box size must be positive");
}

void require_ladder(std::span<const double> ladder) {
  if (ladder.size() < 3) throw DomainError("dimension fit needs at least three scales");
  for (double eps : ladder) require_scale(eps);
}

}  // namespace

std::size_t box_count(const CompactSet& set, double eps) {
  require_scale(eps);
  const double a = set.hull().left();
  const double b = set.hull().right();
  const auto boxes = static_cast<std::size_t>(std::ceil((b - a) / eps - 1e-9));
  const auto gaps = set.gaps().intervals();
  const double shrink = 1e-9 * eps;

  std::size_t count = 0;
  auto gap = gaps.begin();
  for (std::size_t k = 0; k < boxes; ++k) {
    const double lo = a + static_cast<double>(k) * eps + shrink;
    const double hi = std::min(a + static_cast<double>(k + 1) * eps, b) - shrink;
    while (gap != gaps.end() && gap->right() < lo) ++gap;
    const bool inside = gap != gaps.end() && gap->left() <= lo && hi <= gap->right();
    if (!inside) ++count;
  }
  return std::max<std::size_t>(count, 1);
}

std::size_t box_count(std::span<const double> points, double eps) {
  require_scale(eps);
  if (points.empty()) return 0;
  const double anchor = *std::min_element(points.begin(), points.end());
  std::vector<long long> cells;
  cells.reserve(points.size());
  for (double x : points) cells.push_back(static_cast<long long>(std::floor((x - anchor) / eps)));
  std::sort(cells.begin(), cells.end());
  return static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

DimensionFit fit_dimension(std::span<const double> ladder, std::span<const std::size_t> counts) {
  require_ladder(ladder);
  if (counts.size() != ladder.size()) throw DomainError("one count per scale is required");
  const auto n = static_cast<double>(ladder.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double x = -std::log(ladder[i]);
    const double y = std::log(static_cast<double>(std::max<std::size_t>(counts[i], 1)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw DomainError("dimension fit needs distinct scales");
  DimensionFit fit;
  fit.dimension = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.dimension * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double x = -std::log(ladder[i]);
    const double y = std::log(static_cast<double>(std::max<std::size_t>(counts[i], 1)));
    const double r = y - (intercept + fit.dimension * x);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.eps.assign(ladder.begin(), ladder.end());
  fit.counts.assign(counts.begin(), counts.end());
  return fit;
}

DimensionFit box_dimension(const CompactSet& set, std::span<const double> ladder,
                           double finest_resolvable) {
  require_ladder(ladder);
  for (double eps : ladder) {
    if (eps < finest_resolvable * (1.0 - 1e-9)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "scale " << eps << " is finer than the set resolves (" << finest_resolvable
          << "); increase the depth";
      throw DomainError(msg.str());
    }
  }
  std::vector<std::size_t> counts;
  counts.reserve(ladder.size());
  for (double eps : ladder) counts.push_back(box_count(set, eps));
  return fit_dimension(ladder, counts);
}

DimensionFit box_dimension(std::span<const double> points, std::span<const double> ladder) {
  require_ladder(ladder);
  std::vector<std::size_t> counts;
  counts.reserve(ladder.size());
  for (double eps : ladder) counts.push_back(box_count(points, eps));
  return fit_dimension(ladder, counts);
}

std::vector<double> dimension_profile(std::span<const double> points,
                                      std::span<const double> ladder) {
  require_ladder(ladder);
  std::vector<std::size_t> counts;
  counts.reserve(ladder.size());
  for (double eps : ladder) counts.push_back(box_count(points, eps));
  std::vector<double> profile;
  for (std::size_t i = 0; i + 3 <= ladder.size(); ++i) {
    profile.push_back(fit_dimension(ladder.subspan(i), std::span<const std::size_t>(counts).subspan(i)).dimension);
  }
  return profile;
}

std::vector<double> geometric_ladder(double base, double ratio, int first, int last) {
  std::vector<double> out;
  for (int k = first; k <= last; ++k) out.push_back(base * std::pow(ratio, k));
  return out;
}

}  // namespace aggpatch
