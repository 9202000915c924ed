#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "aggpatch/error.hpp"
#include "aggpatch/flow.hpp"
#include "aggpatch/inverse_compact.hpp"
#include "corpus.hpp"

using namespace aggpatch;

namespace {
const MiddleCantor kTriadic(1.0 / 3.0);
}

TEST_CASE("middle cantor gaps match brute enumeration") {
  for (int depth : {0, 1, 2, 5, 8}) {
    const auto gaps = kTriadic.gaps(depth);
    const auto oracle = corpus::triadic_gaps(depth);
    REQUIRE(gaps.size() == oracle.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      CHECK(gaps[i].left() == doctest::Approx(oracle[i].first).epsilon(1e-14));
      CHECK(gaps[i].right() == doctest::Approx(oracle[i].second).epsilon(1e-14));
    }
  }
  CHECK(kTriadic.dimension() == doctest::Approx(std::log(2.0) / std::log(3.0)));
  CHECK(MiddleCantor::from_middle_fraction(1.0 / 3.0).ratio() == 1.0 / 3.0);
  CHECK(residual_length(kTriadic, 8) == doctest::Approx(std::pow(2.0 / 3.0, 8)));
  CHECK_THROWS_AS(MiddleCantor(0.5), DomainError);
  CHECK_THROWS_AS(kTriadic.gaps(27), DomainError);
}

TEST_CASE("cantor cdf: digit algorithm against the recursive staircase") {
  const auto mu = cantor_measure(kTriadic, 2.0, 40);
  CHECK(mu.cdf(-1) == 0.0);
  CHECK(mu.cdf(1) == 2.0);
  CHECK(mu.cdf(0.5) == 1.0);
  CHECK(mu.cdf(0.25) == doctest::Approx(2.0 / 3.0));  // 0.0202.._3 -> 0.0101.._2
  CHECK(mu.cdf(0.75) == doctest::Approx(4.0 / 3.0));
  std::mt19937_64 rng(corpus::kSeed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double y = u(rng);
    CHECK(std::abs(mu.cdf(y) - 2.0 * corpus::cantor_function(y)) < 1e-9);
  }
}

TEST_CASE("depth-2 construction, kept residual") {
  const auto mu = cantor_measure(kTriadic, 2.0, 30);
  const auto c = inverse_compact(kTriadic, mu, 2);
  REQUIRE(c.target_gaps.size() == 3);
  CHECK(c.gap_velocities[0] == doctest::Approx(0.5));
  CHECK(c.gap_velocities[1] == doctest::Approx(0.0));
  CHECK(c.gap_velocities[2] == doctest::Approx(-0.5));
  const CompactSet& k0 = c.initial_set;
  CHECK(k0.hull() == Interval(-1, 2));
  REQUIRE(k0.gaps().size() == 3);
  CHECK(k0.gaps()[0].left() == doctest::Approx(-7.0 / 18));
  CHECK(k0.gaps()[0].right() == doctest::Approx(-5.0 / 18));
  CHECK(k0.gaps()[1].left() == doctest::Approx(1.0 / 3));
  CHECK(k0.gaps()[2].right() == doctest::Approx(25.0 / 18));
  CHECK(k0.measure() == doctest::Approx(22.0 / 9));
  CHECK(velocity(k0, 1.0 / 3) == doctest::Approx(0.0));
  CHECK(c.residual_length == doctest::Approx(4.0 / 9));
  CHECK(c.residual_mass == doctest::Approx(0.5));
}

TEST_CASE("depth-8 velocities against the staircase oracle") {
  const auto mu = cantor_measure(kTriadic, 2.0, 30);
  const auto c = inverse_compact(kTriadic, mu, 8, ResidualPolicy::kCollapseCells);
  REQUIRE(c.target_gaps.size() == 255);
  std::set<double> seen;
  for (std::size_t j = 0; j < c.target_gaps.size(); ++j) {
    const double expected = 1.0 - 2.0 * corpus::cantor_function(c.target_gaps[j].midpoint());
    CHECK(std::abs(c.gap_velocities[j] - expected) < 1e-12);
    // dyadic rationals with denominator <= 2^7
    const double scaled = c.gap_velocities[j] * 128.0;
    CHECK(std::abs(scaled - std::round(scaled)) < 1e-9);
    seen.insert(std::round(scaled) / 128.0);
  }
  CHECK(seen.contains(0.0));
  CHECK(seen.contains(0.5));
  CHECK(seen.contains(-0.5));
  CHECK(seen.size() == 255);  // all distinct
  // velocities decrease left to right
  for (std::size_t j = 1; j < c.gap_velocities.size(); ++j) {
    CHECK(c.gap_velocities[j] < c.gap_velocities[j - 1]);
  }
  CHECK(c.initial_set.measure() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c.residual_mass == doctest::Approx(2.0 / 256));
}

TEST_CASE("limit map and pushforward, collapsed cells") {
  const auto mu = cantor_measure(kTriadic, 2.0, 30);
  const auto c = inverse_compact(kTriadic, mu, 8, ResidualPolicy::kCollapseCells);
  const CompactSet& k0 = c.initial_set;
  CHECK(limit_map(k0, k0.hull().left()) == doctest::Approx(0.0));
  CHECK(limit_map(k0, k0.hull().right()) == doctest::Approx(1.0));
  // each translated gap lands on its target
  for (std::size_t j = 0; j < c.target_gaps.size(); ++j) {
    const Interval& g = c.target_gaps[j];
    const double v = c.gap_velocities[j];
    CHECK(limit_map(k0, g.left() - v) == doctest::Approx(g.left()).epsilon(1e-12));
    CHECK(limit_map(k0, g.right() - v) == doctest::Approx(g.right()).epsilon(1e-12));
  }
  CHECK(pushforward_cdf(k0, 0.5) == doctest::Approx(1.0));
  CHECK(pushforward_cdf(k0, -0.1) == 0.0);
  CHECK(pushforward_cdf(k0, 1.0) == doctest::Approx(2.0));
  const double tol = c.residual_mass + 1e-9;
  for (const Interval& g : c.target_gaps) {
    CHECK(std::abs(pushforward_cdf(k0, g.left()) - mu.cdf(g.left())) <= tol);
    CHECK(std::abs(pushforward_cdf(k0, g.right()) - mu.cdf(g.right())) <= tol);
  }
}

TEST_CASE("fiber: bracket is ordered and X1 is flat on it") {
  const auto mu = cantor_measure(kTriadic, 2.0, 30);
  const auto c = inverse_compact(kTriadic, mu, 8, ResidualPolicy::kCollapseCells);
  const CompactSet& k0 = c.initial_set;
  std::mt19937_64 rng(corpus::kSeed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double y = u(rng);
    const Fiber f = fiber(k0, y);
    REQUIRE(f.lower <= f.upper);
    const double x_lo = limit_map(k0, f.lower);
    const double x_hi = limit_map(k0, f.upper);
    CHECK(x_hi - x_lo <= 1e-10 + 2e-12);
    CHECK(std::abs(x_lo - y) < 1e-10);
  }
  // X1 is flat on each piece of K0: those fibers are whole pieces
  const auto pieces = k0.pieces();
  REQUIRE(pieces.size() == 2 * c.target_gaps.size() + 2);
  for (std::size_t i = 0; i < pieces.size(); i += 51) {
    const ClosedInterval& p = pieces[i];
    const Fiber f = fiber(k0, limit_map(k0, 0.5 * (p.lo + p.hi)));
    CHECK(f.lower <= p.lo + 1e-11);
    CHECK(f.upper >= p.hi - 1e-11);
    CHECK(f.upper - f.lower <= p.length() + 1e-11);
  }
}

TEST_CASE("skeleton image is the target set") {
  const auto mu = cantor_measure(kTriadic, 2.0, 30);
  const auto c = inverse_compact(kTriadic, mu, 6, ResidualPolicy::kCollapseCells);
  const CompactSet img = skeleton_image(c);
  CHECK(img.hull().left() == doctest::Approx(0.0));
  CHECK(img.hull().right() == doctest::Approx(1.0));
  REQUIRE(img.gaps().size() == c.target_gaps.size());
  for (std::size_t j = 0; j < c.target_gaps.size(); ++j) {
    CHECK(img.gaps()[j].left() == doctest::Approx(c.target_gaps[j].left()).epsilon(1e-12));
  }
  CHECK(img.measure() == doctest::Approx(std::pow(2.0 / 3.0, 6)).epsilon(1e-9));
}

TEST_CASE("forward evolution of K0 approaches the target cdf") {
  const auto mu = cantor_measure(kTriadic, 2.0, 30);
  const auto c = inverse_compact(kTriadic, mu, 10, ResidualPolicy::kCollapseCells);
  for (int k : {4, 8, 12}) {
    const double t = 1.0 - std::ldexp(1.0, -k);
    const CompactSnapshot s = evolve(c.initial_set, t);
    for (std::size_t j = 0; j < c.target_gaps.size(); j += 37) {
      // the translated gap moves rigidly onto its target, carrying the
      // target cdf value with it
      const Interval& g = c.target_gaps[j];
      const double v = c.gap_velocities[j];
      const double y = trajectory(c.initial_set, g.midpoint() - v, t);
      CHECK(y == doctest::Approx(g.midpoint() - v * (1 - t)));
      CHECK(std::abs(s.cdf(y) - mu.cdf(g.midpoint())) < 1e-9);
    }
  }
}

TEST_CASE("errors") {
  const auto mu = cantor_measure(kTriadic, 2.0, 30);
  const MiddleCantor shifted(1.0 / 3.0, Interval(0, 2));
  CHECK_THROWS_AS(inverse_compact(shifted, mu, 3), DomainError);
  CHECK_THROWS_AS(gap_velocity(mu, Interval(0.5, 1.5)), DomainError);
  CHECK_THROWS_AS(inverse_compact(kTriadic, mu, -1), DomainError);

  // a decreasing "cdf" pushes the gaps through each other
  const CdfMeasure bad(Interval(0, 1), 1.0, [](double x) { return x < 0.25 ? 1.0 : 0.0; }, 1,
                       1.0);
  const ExplicitGaps gaps(Interval(0, 1), {{Interval(0.1, 0.2), Interval(0.3, 0.4)}});
  CHECK_THROWS_AS(inverse_compact(gaps, bad, 1), DomainError);
}
