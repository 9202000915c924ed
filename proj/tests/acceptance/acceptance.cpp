// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "aggpatch/analysis.hpp"
#include "aggpatch/flow.hpp"
#include "aggpatch/inverse_compact.hpp"
#include "aggpatch/inverse_open.hpp"
#include "aggpatch/measures.hpp"
#include "aggpatch/oracle.hpp"
#include "aggpatch/skeleton.hpp"
#include "corpus.hpp"

using namespace aggpatch;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> dyadic_times(int k_max) {
  std::vector<double> t;
  for (int k = 1; k <= k_max; ++k) t.push_back(1.0 - std::ldexp(1.0, -k));
  return t;
}

const IntervalUnion& two_intervals() {
  static const auto u = IntervalUnion::normalize({Interval(0, 1), Interval(2, 3)});
  return u;
}

// The N = 10^4, T = 1 - 10^-3 particle run is shared by two criteria.
const oracle::TrajectoryTable& two_interval_run() {
  static const oracle::TrajectoryTable table = [] {
    const auto p = oracle::discretize(two_intervals(), 10000);
    auto opts = oracle::default_options(0.999);
    opts.record_every = 50000;  // t = 0.5 lands on step 50000
    return oracle::integrate(p, opts);
  }();
  return table;
}

Outcome mass_conservation() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::size_t checks = 0;
  for (const auto& c : corpus::unions()) {
    for (double t : dyadic_times(20)) {
      const FlowSnapshot s = evolve(c.set, t);
      worst = std::max(worst, std::abs(s.density_level * s.measure() - c.set.measure()));
      ++checks;
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-12 && elapsed < 1.0,
          fmt("%zu snapshots, max |rho*|Omega_t| - |Omega_0|| = %.3g, %.3f s", checks, worst,
              elapsed)};
}

Outcome length_contraction() {
  double worst = 0.0;
  std::size_t checks = 0;
  bool merged = false;
  for (const auto& c : corpus::unions()) {
    for (double t : dyadic_times(20)) {
      const FlowSnapshot s = evolve(c.set, t);
      if (s.support.size() != c.set.size()) {
        merged = true;
        continue;
      }
      for (std::size_t i = 0; i < c.set.size(); ++i) {
        // from the evolved endpoints X(alpha_i, t), X(beta_i, t)
        worst = std::max(worst, std::abs(s.support[i].length() - (1 - t) * c.set[i].length()));
        ++checks;
      }
    }
  }
  return {worst <= 1e-12 && !merged,
          fmt("%zu intervals, max |len - (1-t)|I|| = %.3g%s", checks, worst,
              merged ? ", some intervals merged" : "")};
}

Outcome skeleton_containment() {
  std::size_t outside = 0, unseparated = 0, atoms = 0;
  double mass_err = 0.0;
  for (const auto& c : corpus::unions()) {
    const SkeletonReport r = skeleton_report(c.set);
    double total = 0.0;
    for (std::size_t i = 0; i < r.measure.size(); ++i) {
      outside += !r.bounds.contains(r.measure[i].position, 1e-12);
      if (i > 0) unseparated += !(r.measure[i].position - r.measure[i - 1].position > 0.0);
      total += r.measure[i].mass;
      ++atoms;
    }
    mass_err = std::max(mass_err, std::abs(total - c.set.measure()));
  }
  return {outside == 0 && unseparated == 0 && mass_err <= 1e-12,
          fmt("%zu atoms: %zu outside [a+L,b-L], %zu non-separated, max mass error %.3g", atoms,
              outside, unseparated, mass_err)};
}

Outcome round_trip() {
  std::size_t degenerate = 0, used = 0, bad = 0;
  double worst = 0.0;
  for (const auto& mu : corpus::atomic_measures()) {
    const OpenConstruction out = inverse_open(mu);
    if (out.degenerate) {
      ++degenerate;
      continue;
    }
    ++used;
    const AtomicMeasure back = skeleton(out.initial_set);
    if (back.size() != mu.size()) {
      ++bad;
      continue;
    }
    for (std::size_t i = 0; i < mu.size(); ++i) {
      worst = std::max({worst, std::abs(back[i].position - mu[i].position),
                        std::abs(back[i].mass - mu[i].mass)});
    }
  }
  return {bad == 0 && worst <= 1e-12 && used > 0,
          fmt("%zu measures (%zu degenerate excluded), max deviation %.3g", used, degenerate,
              worst)};
}

Outcome two_interval_example() {
  const IntervalUnion& u = two_intervals();
  const AtomicMeasure mu = skeleton(u);
  bool ok = mu.size() == 2 && mu[0] == Atom{1, 1} && mu[1] == Atom{2, 1};
  const FlowSnapshot half = evolve(u, 0.5);
  ok = ok && half.density_level == 2.0 && half.support.size() == 2 &&
       half.support[0] == Interval(0.5, 1) && half.support[1] == Interval(2, 2.5);
  double first_moment = 0.0;
  for (double t : {0.0, 0.25, 0.5, 0.75, 0.9, 0.999, 1.0 - 1e-9}) {
    first_moment = std::max(first_moment,
                            std::abs(pair_snapshot(Polynomial::monomial(1), evolve(u, t)) - 3.0));
  }
  const double second = pair_snapshot(Polynomial::monomial(2), half);
  ok = ok && first_moment < 1e-12 && std::abs(second - 17.0 / 3.0) < 1e-12;

  // particle cross-check at N = 10^4
  const auto& table = two_interval_run();
  const oracle::Frame* at_half = nullptr;
  for (const auto& f : table.frames) {
    if (std::abs(f.t - 0.5) < 1e-12) at_half = &f;
  }
  double px = 0.0, px2 = 0.0;
  if (at_half) {
    for (double x : at_half->positions) {
      px += table.weight * x;
      px2 += table.weight * x * x;
    }
  }
  const auto clusters = oracle::cluster(table.frames.back().positions, table.weight, 1e-2);
  double atom_err = clusters.size() == 2 ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < clusters.size() && i < 2; ++i) {
    atom_err = std::max(atom_err, std::abs(clusters[i].position - mu[i].position));
  }
  const bool oracle_ok = at_half && std::abs(px - 3.0) < 2e-3 &&
                         std::abs(px2 - 17.0 / 3.0) < 2e-3 && atom_err < 2e-3;
  return {ok && oracle_ok,
          fmt("atoms (1,1),(2,1); |<x,mu_t>-3| <= %.2g; <x^2,mu_1/2> = %.15g; particles: "
              "<x> = %.6f, <x^2> = %.6f, atoms off by %.2g",
              first_moment, second, px, px2, atom_err)};
}

Outcome weak_rate() {
  const Polynomial fs[] = {Polynomial::monomial(1), Polynomial::monomial(2),
                           Polynomial::monomial(3), Polynomial::cos_surrogate()};
  std::size_t bound_checks = 0, bound_fail = 0;
  std::size_t first_order = 0, rate_fail = 0, vanishing = 0, early = 0;
  for (const auto& c : corpus::unions()) {
    const AtomicMeasure mu = skeleton(c.set);
    for (const Polynomial& f : fs) {
      for (int k = 1; k <= 20; ++k) {
        const double t = 1.0 - std::ldexp(1.0, -k);
        ++bound_checks;
        bound_fail += !(weak_error(c.set, f, t) <= weak_error_bound(c.set, f, t));
      }
      // error = (1 - t) |A| + O((1 - t)^2), A = sum f'(x_i) |I_i| (m_i - x_i)
      const Polynomial df = f.derivative();
      double a = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < c.set.size(); ++i) {
        const double term = df(mu[i].position) * c.set[i].length() *
                            (c.set[i].midpoint() - mu[i].position);
        a += term;
        scale += std::abs(term);
      }
      if (!(std::abs(a) > 1e-9 * scale)) {
        ++vanishing;
        continue;
      }
      ++first_order;
      auto ratio = [&](int k) {
        return weak_error(c.set, f, 1.0 - std::ldexp(1.0, -k - 1)) /
               weak_error(c.set, f, 1.0 - std::ldexp(1.0, -k));
      };
      bool ok = true;
      for (int k = 28; k < 32; ++k) ok = ok && std::abs(ratio(k) - 0.5) <= 0.05;
      rate_fail += !ok;
      early += std::abs(ratio(19) - 0.5) > 0.05;
    }
  }
  return {bound_fail == 0 && rate_fail == 0,
          fmt("bound holds %zu/%zu; ratio 0.5+-0.05 on k=28..32 for %zu/%zu pairs with A != 0 "
              "(%zu pairs with A = 0 skipped: f = x, single intervals; %zu near-cancelling "
              "pairs still pre-asymptotic at k = 19->20)",
              bound_checks - bound_fail, bound_checks, first_order - rate_fail, first_order,
              vanishing, early)};
}

Outcome cantor_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  const MiddleCantor cantor(1.0 / 3.0);
  const CdfMeasure mu = cantor_measure(cantor, 2.0, 30);
  const CompactConstruction c =
      inverse_compact(cantor, mu, 8, ResidualPolicy::kCollapseCells);
  double v_err = 0.0;
  bool has_half = false, has_zero = false, has_minus_half = false;
  for (std::size_t j = 0; j < c.target_gaps.size(); ++j) {
    const double expected = 1.0 - 2.0 * corpus::cantor_function(c.target_gaps[j].midpoint());
    v_err = std::max(v_err, std::abs(c.gap_velocities[j] - expected));
    has_zero |= c.gap_velocities[j] == 0.0;
    has_half |= c.gap_velocities[j] == 0.5;
    has_minus_half |= c.gap_velocities[j] == -0.5;
  }
  const double tol = 2.0 * std::ldexp(1.0, -8) + 1e-9;
  double push_err = 0.0;
  for (const Interval& g : c.target_gaps) {
    for (double y : {g.left(), g.right()}) {
      push_err = std::max(push_err, std::abs(pushforward_cdf(c.initial_set, y) - mu.cdf(y)));
    }
  }
  const double elapsed = seconds_since(start);
  return {v_err < 1e-12 && has_zero && has_half && has_minus_half && push_err <= tol &&
              elapsed < 5.0,
          fmt("%zu gaps, velocity error %.3g (0, +-1/2 present), max pushforward error %.6g <= "
              "%.6g, %.3f s",
              c.target_gaps.size(), v_err, push_err, tol, elapsed)};
}

Outcome fiber_structure() {
  const MiddleCantor cantor(1.0 / 3.0);
  const CdfMeasure mu = cantor_measure(cantor, 2.0, 30);
  const CompactSet k0 =
      inverse_compact(cantor, mu, 8, ResidualPolicy::kCollapseCells).initial_set;
  std::mt19937_64 rng(corpus::kSeed);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  std::size_t unordered = 0;
  double spread = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Fiber f = fiber(k0, pick(rng));
    unordered += !(f.lower <= f.upper);
    double lo = INFINITY, hi = -INFINITY;
    for (int q = 0; q <= 16; ++q) {
      const double y = limit_map(k0, f.lower + (f.upper - f.lower) * q / 16.0);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    spread = std::max(spread, hi - lo);
  }
  return {unordered == 0 && spread <= 1e-10,
          fmt("1000 fibers, %zu unordered, max spread of X1 on [x-,x+] = %.3g", unordered,
              spread)};
}

Outcome oracle_equivalence() {
  // single interval: (w/2)(N-1-2k) against M/2 - |S ∩ (-inf, x)|
  double ulps = 0.0;
  bool dyadic_exact = true;
  for (const auto& [l, r, n] : {std::tuple{-2.0, 2.0, 1024}, std::tuple{0.0, 1.0, 10000},
                                 std::tuple{-2.0, 3.0, 7}, std::tuple{0.3, 1.7, 999}}) {
    const auto u = IntervalUnion::normalize({Interval(l, r)});
    const auto p = oracle::discretize(u, n);
    const double unit = std::numeric_limits<double>::epsilon() * 0.5 * u.measure();
    for (std::size_t k = 0; k < p.positions.size(); ++k) {
      const double diff = std::abs(oracle::particle_velocity(p, k) - velocity(u, p.positions[k]));
      ulps = std::max(ulps, diff / unit);
      if (l == -2.0 && r == 2.0) dyadic_exact = dyadic_exact && diff == 0.0;
    }
  }
  const auto& table = two_interval_run();
  const AtomicMeasure atoms = skeleton(two_intervals());
  const auto clusters = oracle::cluster(table.frames.back().positions, table.weight, 1e-2);
  double pos = clusters.size() == atoms.size() ? 0.0 : INFINITY, mass = pos;
  for (std::size_t i = 0; i < clusters.size() && i < atoms.size(); ++i) {
    pos = std::max(pos, std::abs(clusters[i].position - atoms[i].position));
    mass = std::max(mass, std::abs(clusters[i].mass - atoms[i].mass));
  }
  return {dyadic_exact && ulps <= 4.0 && pos <= 2e-3 && mass <= table.weight,
          fmt("velocities: bitwise equal on dyadic data, <= %.1f ulp(M/2) otherwise; N=10^4, "
              "T=0.999: %zu clusters, position error %.3g, mass error %.3g (w = %.3g)",
              ulps, clusters.size(), pos, mass, table.weight)};
}

Outcome dimension_distortion() {
  const MiddleCantor cantor(1.0 / 3.0);
  const CdfMeasure mu = cantor_measure(cantor, 2.0, 30);
  const CompactSet image =
      skeleton_image(inverse_compact(cantor, mu, 10, ResidualPolicy::kCollapseCells));
  const auto fit =
      box_dimension(image, geometric_ladder(1.0, 1.0 / 3.0, 2, 8), std::pow(3.0, -10));
  const double target = std::log(2.0) / std::log(3.0);

  std::size_t non_monotone = 0, not_zero = 0;
  for (const auto& c : corpus::unions()) {
    const AtomicMeasure atoms = skeleton(c.set);
    std::vector<double> pts;
    for (const Atom& a : atoms.atoms()) pts.push_back(a.position);
    const double w = atoms.hull().length() > 0 ? atoms.hull().length() : 1.0;
    const auto profile = dimension_profile(pts, geometric_ladder(w, 0.5, 0, 30));
    for (std::size_t i = 1; i < profile.size(); ++i) {
      if (profile[i] > profile[i - 1] + 1e-12) {
        ++non_monotone;
        break;
      }
    }
    not_zero += std::abs(profile.back()) > 1e-12;
  }
  return {std::abs(fit.dimension - target) <= 0.05 && non_monotone == 0 && not_zero == 0,
          fmt("cantor skeleton %.6f vs log2/log3 = %.6f; open skeletons: %zu/200 profiles "
              "non-monotone, %zu not reaching 0",
              fit.dimension, target, non_monotone, not_zero)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"mass-conservation", mass_conservation},
      {"length-contraction", length_contraction},
      {"skeleton-containment", skeleton_containment},
      {"inverse-open-round-trip", round_trip},
      {"two-interval-example", two_interval_example},
      {"weak-convergence-rate", weak_rate},
      {"cantor-reproduction", cantor_reproduction},
      {"pushforward-fibers", fiber_structure},
      {"oracle-equivalence", oracle_equivalence},
      {"dimension-distortion", dimension_distortion},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
