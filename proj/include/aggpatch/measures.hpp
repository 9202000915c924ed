#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "aggpatch/flow.hpp"
#include "aggpatch/interval_set.hpp"
#include "aggpatch/skeleton.hpp"

namespace aggpatch {

// f(x) = sum_k c_k x^k, degree at most 8.
class Polynomial {
 public:
  static constexpr std::size_t kMaxDegree = 8;

  // Coefficients in increasing degree. Throws DomainError on degree > 8 or
  // non-finite coefficients.
  explicit Polynomial(std::vector<double> coefficients);
  Polynomial(std::initializer_list<double> coefficients)
      : Polynomial(std::vector<double>(coefficients)) {}

  static Polynomial monomial(std::size_t degree);
  // Degree-8 Taylor polynomial of cos about 0.
  static Polynomial cos_surrogate();

  std::span<const double> coefficients() const noexcept { return coefficients_; }
  std::size_t degree() const noexcept { return coefficients_.size() - 1; }

  double operator()(double x) const noexcept;
  Polynomial derivative() const;
  // Coefficients of s -> f(center + scale * s).
  std::vector<double> shifted(double center, double scale) const;

 private:
  std::vector<double> coefficients_;
};

// <f, mu_t> = (1/(1-t)) sum_i int over the evolved intervals of f, exact.
double pair_snapshot(const Polynomial& f, const FlowSnapshot& snap);

// sum_i c_i f(x_i)
double pair_atoms(const Polynomial& f, const AtomicMeasure& mu);

// |<f, mu_t> - <f, mu_1>|; the difference is formed term by term in the
// anchored expansion so no large pairings are subtracted.
double weak_error(const IntervalUnion& omega0, const Polynomial& f, double t);

// max |f'| on hull(omega0) widened by L, from 10^4 samples plus endpoints.
double lipschitz_bound(const Polynomial& f, const IntervalUnion& omega0);

// Lip(f) (1 - t) sum |I_i|^2
double weak_error_bound(const IntervalUnion& omega0, const Polynomial& f, double t);

}  // namespace aggpatch
