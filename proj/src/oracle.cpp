#include "aggpatch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aggpatch::oracle {

ParticleSystem discretize(const IntervalUnion& omega0, std::size_t n) {
  if (n == 0) throw DomainError("particle count must be positive");
  if (omega0.empty()) throw DomainError("cannot discretize an empty set");

  const double total = omega0.measure();
  std::vector<std::size_t> counts(omega0.size());
  std::vector<double> remainders(omega0.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < omega0.size(); ++i) {
    const double share = static_cast<double>(n) * omega0[i].length() / total;
    counts[i] = static_cast<std::size_t>(std::floor(share));
    remainders[i] = share - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(omega0.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t r = 0; assigned < n; ++r, ++assigned) ++counts[order[r % order.size()]];

  ParticleSystem p;
  p.weight = total / static_cast<double>(n);
  p.positions.reserve(n);
  for (std::size_t i = 0; i < omega0.size(); ++i) {
    const double cell = omega0[i].length() / static_cast<double>(counts[i]);
    for (std::size_t j = 0; j < counts[i]; ++j) {
      p.positions.push_back(omega0[i].left() + (static_cast<double>(j) + 0.5) * cell);
    }
  }
  return p;
}

double particle_velocity(const ParticleSystem& p, std::size_t k) {
  if (k >= p.positions.size()) throw DomainError("particle index out of range");
  const double x = p.positions[k];
  long long balance = 0;
  for (double y : p.positions) balance += (y > x) - (y < x);
  return 0.5 * p.weight * static_cast<double>(balance);
}

IntegrationOptions default_options(double t_final) {
  IntegrationOptions o;
  o.t_final = t_final;
  o.dt = (1.0 - t_final) / 100.0;
  return o;
}

CollisionError::CollisionError(std::size_t step, std::size_t particle)
    : DomainError("particles " + std::to_string(particle) + " and " +
                  std::to_string(particle + 1) + " crossed during step " + std::to_string(step) +
                  "; reduce the final time or refine the discretization"),
      step_(step),
      particle_(particle) {}

namespace {

// Index of the first strict order violation, or size() if none.
std::size_t first_inversion(std::span<const double> x) {
  for (std::size_t k = 1; k < x.size(); ++k) {
    if (x[k] < x[k - 1]) return k - 1;
  }
  return x.size();
}

class Stepper {
 public:
  Stepper(std::size_t n, const IntegrationOptions& o) : opts_(o), stage_(n), k_(3, std::vector<double>(n)) {}

  // Advances x in place; velocities at the start of the step are left in v.
  void step(std::vector<double>& x, std::vector<double>& v, double weight, double dt,
            std::size_t index) {
    eval(x, weight, v, index);
    if (opts_.scheme == Scheme::kEuler) {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += dt * v[i];
    } else {
      auto& k2 = k_[0];
      auto& k3 = k_[1];
      auto& k4 = k_[2];
      for (std::size_t i = 0; i < x.size(); ++i) stage_[i] = x[i] + 0.5 * dt * v[i];
      eval(stage_, weight, k2, index);
      for (std::size_t i = 0; i < x.size(); ++i) stage_[i] = x[i] + 0.5 * dt * k2[i];
      eval(stage_, weight, k3, index);
      for (std::size_t i = 0; i < x.size(); ++i) stage_[i] = x[i] + dt * k3[i];
      eval(stage_, weight, k4, index);
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += dt / 6.0 * (v[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
    }
    if (const std::size_t bad = first_inversion(x); bad < x.size()) throw CollisionError(index, bad);
  }

  void eval(std::span<const double> x, double weight, std::span<double> out, std::size_t index) {
    if (const std::size_t bad = first_inversion(x); bad < x.size()) throw CollisionError(index, bad);
    kernels::particle_velocities(x, weight, out, opts_.backend);
  }

 private:
  const IntegrationOptions& opts_;
  std::vector<double> stage_;
  std::vector<std::vector<double>> k_;
};

}  // namespace

TrajectoryTable integrate(const ParticleSystem& p, const IntegrationOptions& options) {
  if (!(options.dt > 0.0)) throw DomainError("time step must be positive");
  if (!(options.t_final >= 0.0 && options.t_final < 1.0)) {
    throw DomainError("final time must lie in [0, 1)");
  }
  if (first_inversion(p.positions) < p.positions.size()) {
    throw DomainError("initial particle positions must be sorted");
  }

  const auto steps = static_cast<std::size_t>(std::ceil(options.t_final / options.dt - 1e-9));
  TrajectoryTable table;
  table.weight = p.weight;
  table.steps = steps;

  std::vector<double> x = p.positions;
  std::vector<double> v(x.size());
  Stepper stepper(x.size(), options);

  auto record = [&](std::size_t step, double t) {
    std::vector<double> vel(x.size());
    kernels::particle_velocities(x, p.weight, vel, options.backend);
    table.frames.push_back({step, t, x, std::move(vel)});
  };
  record(0, 0.0);
  double t = 0.0;
  for (std::size_t s = 1; s <= steps; ++s) {
    const double next = (s == steps) ? options.t_final : static_cast<double>(s) * options.dt;
    stepper.step(x, v, p.weight, next - t, s);
    t = next;
    const bool keep = s == steps || (options.record_every > 0 && s % options.record_every == 0);
    if (keep) record(s, t);
  }
  return table;
}

AtomicMeasure cluster(std::span<const double> positions, double weight, double tol) {
  if (!(tol > 0.0)) throw DomainError("cluster tolerance must be positive");
  std::vector<double> x(positions.begin(), positions.end());
  std::sort(x.begin(), x.end());
  std::vector<Atom> atoms;
  std::size_t begin = 0;
  for (std::size_t k = 1; k <= x.size(); ++k) {
    if (k == x.size() || x[k] - x[k - 1] > tol) {
      double sum = 0.0;
      for (std::size_t j = begin; j < k; ++j) sum += x[j];
      const auto size = static_cast<double>(k - begin);
      atoms.push_back({sum / size, weight * size});
      begin = k;
    }
  }
  return AtomicMeasure::from_atoms(std::move(atoms));
}

}  // namespace aggpatch::oracle
