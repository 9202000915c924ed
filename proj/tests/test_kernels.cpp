#include <doctest.h>

#include <random>

#include "aggpatch/analysis.hpp"
#include "aggpatch/error.hpp"
#include "aggpatch/flow.hpp"
#include "aggpatch/inverse_compact.hpp"
#include "aggpatch/kernels.hpp"
#include "corpus.hpp"

using namespace aggpatch;
using kernels::Backend;

TEST_CASE("particle velocities: run-length, OpenMP and direct agree") {
  std::mt19937_64 rng(corpus::kSeed);
  std::uniform_int_distribution<int> level(0, 40);  // many ties
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(300);
    for (double& xi : x) xi = 0.25 * level(rng);
    std::sort(x.begin(), x.end());
    std::vector<double> a(x.size()), b(x.size()), c(x.size());
    kernels::particle_velocities(x, 0.01, a, Backend::kSerial);
    kernels::particle_velocities(x, 0.01, b, Backend::kOpenMP);
    kernels::particle_velocities_direct(x, 0.01, c);
    CHECK(a == b);  // bitwise
    CHECK(a == c);
  }
}

TEST_CASE("trajectory grid") {
  for (const auto& c : corpus::unions()) {
    std::vector<double> alphas;
    for (auto [l, r] : c.raw) {
      alphas.push_back(l);
      alphas.push_back(0.5 * (l + r));
    }
    const std::vector<double> times = {0.0, 0.5, 0.9, 1.0};
    std::vector<double> s(alphas.size() * times.size()), o(s.size());
    kernels::trajectory_grid(c.set, alphas, times, s, Backend::kSerial);
    kernels::trajectory_grid(c.set, alphas, times, o, Backend::kOpenMP);
    CHECK(s == o);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      for (std::size_t j = 0; j < times.size(); ++j) {
        CHECK(s[i * times.size() + j] == trajectory(c.set, alphas[i], times[j]));
      }
    }
  }
}

TEST_CASE("pushforward batch and box counts") {
  const MiddleCantor cantor(1.0 / 3.0);
  const auto mu = cantor_measure(cantor, 2.0, 30);
  const auto c = inverse_compact(cantor, mu, 6, ResidualPolicy::kCollapseCells);
  std::vector<double> ys;
  for (int i = 0; i <= 200; ++i) ys.push_back(-0.1 + 1.2 * i / 200.0);
  std::vector<double> s(ys.size()), o(ys.size());
  kernels::pushforward_cdf_batch(c.initial_set, ys, s, Backend::kSerial);
  kernels::pushforward_cdf_batch(c.initial_set, ys, o, Backend::kOpenMP);
  CHECK(s == o);
  for (std::size_t i = 0; i < ys.size(); ++i) CHECK(s[i] == pushforward_cdf(c.initial_set, ys[i]));

  const auto ladder = geometric_ladder(1.0, 0.5, 0, 12);
  std::vector<std::size_t> bs(ladder.size()), bo(ladder.size());
  kernels::box_counts(c.initial_set, ladder, bs, Backend::kSerial);
  kernels::box_counts(c.initial_set, ladder, bo, Backend::kOpenMP);
  CHECK(bs == bo);
}

TEST_CASE("size mismatches are rejected") {
  const std::vector<double> x = {0.0, 1.0};
  std::vector<double> out(1);
  CHECK_THROWS_AS(kernels::particle_velocities(x, 1.0, out, Backend::kSerial), DomainError);
  CHECK(kernels::max_threads() >= 1);
}
