#include "aggpatch/measures.hpp"

#include <algorithm>
#include <cmath>

#include "aggpatch/error.hpp"

namespace aggpatch {
namespace {

// int_lo^{lo+len} s^k ds = len * sum_{j<=k} hi^j lo^(k-j) / (k+1)
double power_integral(std::size_t k, double lo, double len) {
  const double hi = lo + len;
  double sum = 0.0;
  double hi_pow = 1.0;
  for (std::size_t j = 0; j <= k; ++j) {
    double lo_pow = 1.0;
    for (std::size_t m = 0; m < k - j; ++m) lo_pow *= lo;
    sum += hi_pow * lo_pow;
    hi_pow *= hi;
  }
  return len * sum / static_cast<double>(k + 1);
}

// Per-cell integral of f over the evolved cell divided by (1 - t), split into
// the collapse term f(anchor) * length and the remainder.
struct CellPairing {
  double limit = 0.0;
  double remainder = 0.0;
};

CellPairing pair_cell(const Polynomial& f, const EvolvedCell& cell, double shrink) {
  const std::vector<double> g = f.shifted(cell.anchor, shrink);
  CellPairing out;
  out.limit = g[0] * cell.length;
  for (std::size_t k = 1; k < g.size(); ++k) {
    out.remainder += g[k] * power_integral(k, cell.offset, cell.length);
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) coefficients_.push_back(0.0);
  if (coefficients_.size() > kMaxDegree + 1) {
    throw DomainError("test polynomials are limited to degree 8");
  }
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw DomainError("polynomial coefficients must be finite");
  }
}

Polynomial Polynomial::monomial(std::size_t degree) {
  std::vector<double> c(degree + 1, 0.0);
  c[degree] = 1.0;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::cos_surrogate() {
  return Polynomial({1.0, 0.0, -1.0 / 2.0, 0.0, 1.0 / 24.0, 0.0, -1.0 / 720.0, 0.0, 1.0 / 40320.0});
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<double> d;
  for (std::size_t k = 1; k < coefficients_.size(); ++k) {
    d.push_back(static_cast<double>(k) * coefficients_[k]);
  }
  return Polynomial(std::move(d));
}

std::vector<double> Polynomial::shifted(double center, double scale) const {
  // repeated synthetic division gives the Taylor coefficients at `center`
  std::vector<double> c = coefficients_;
  const std::size_t n = c.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = n - 1; j > k; --j) c[j - 1] += center * c[j];
  }
  double s = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    c[k] *= s;
    s *= scale;
  }
  return c;
}

double pair_snapshot(const Polynomial& f, const FlowSnapshot& snap) {
  const double shrink = 1.0 - snap.t;
  double total = 0.0;
  for (const EvolvedCell& cell : snap.cells) {
    const CellPairing p = pair_cell(f, cell, shrink);
    total += p.limit + p.remainder;
  }
  return total;
}

double pair_atoms(const Polynomial& f, const AtomicMeasure& mu) {
  double total = 0.0;
  for (const Atom& a : mu.atoms()) total += a.mass * f(a.position);
  return total;
}

double weak_error(const IntervalUnion& omega0, const Polynomial& f, double t) {
  const FlowSnapshot snap = evolve(omega0, t);
  double remainder = 0.0;
  for (const EvolvedCell& cell : snap.cells) remainder += pair_cell(f, cell, 1.0 - t).remainder;
  return std::abs(remainder);
}

double lipschitz_bound(const Polynomial& f, const IntervalUnion& omega0) {
  const Interval h = omega0.hull();
  const double half_mass = 0.5 * omega0.measure();
  const double lo = h.left() - half_mass;
  const double hi = h.right() + half_mass;
  const Polynomial df = f.derivative();
  constexpr int kSamples = 10000;
  double best = std::max(std::abs(df(lo)), std::abs(df(hi)));
  for (int i = 0; i < kSamples; ++i) {
    const double x = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / kSamples;
    best = std::max(best, std::abs(df(x)));
  }
  return best;
}

double weak_error_bound(const IntervalUnion& omega0, const Polynomial& f, double t) {
  double sum_sq = 0.0;
  for (const Interval& iv : omega0.intervals()) sum_sq += iv.length() * iv.length();
  return lipschitz_bound(f, omega0) * (1.0 - t) * sum_sq;
}

}  // namespace aggpatch
