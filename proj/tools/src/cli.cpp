#include "aggpatch/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "aggpatch/analysis.hpp"
#include "aggpatch/error.hpp"
#include "aggpatch/flow.hpp"
#include "aggpatch/inverse_compact.hpp"
#include "aggpatch/inverse_open.hpp"
#include "aggpatch/io.hpp"
#include "aggpatch/kernels.hpp"
#include "aggpatch/measures.hpp"
#include "aggpatch/oracle.hpp"
#include "aggpatch/skeleton.hpp"

namespace aggpatch::cli {
namespace {

namespace fs = std::filesystem;
using io::Json;
using io::format_double;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::set<std::string> kKnownKeys = {
    "scenario", "set",        "truncation",  "measure",   "generator",     "total_mass",
    "depth",    "resolution_depth", "residual_policy", "t_grid", "N",     "t_final",
    "dt",       "scheme",     "record_every", "tol",      "position_tolerance",
    "functions", "k_max",     "ladder",      "target",    "tolerance",     "fiber_samples",
    "seed",     "outputs"};

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<int> depth;
  std::optional<long long> particles;
  std::optional<double> t_final;
  std::optional<unsigned long long> seed;
};

// Parsed config plus the bits every command needs.
struct Context {
  std::string command;
  Json config = Json::object();
  std::string hash;
  fs::path out_dir;
  bool plot = false;
  std::ostream* log = nullptr;
};

template <class T>
T get_or(const Json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key \"") + key + "\" has the wrong type");
  }
}

const Json& require(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw ConfigError(std::string("config needs \"") + key + "\"");
  return doc.at(key);
}

Context load(const std::string& command, const Options& opts, std::ostream& log) {
  Context ctx;
  ctx.command = command;
  ctx.log = &log;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw ConfigError("cannot read config " + opts.config_path);
    try {
      ctx.config = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!ctx.config.is_object()) throw ConfigError("config must be a JSON object");
  }
  for (auto it = ctx.config.begin(); it != ctx.config.end(); ++it) {
    if (!kKnownKeys.contains(it.key())) throw ConfigError("unknown config key \"" + it.key() + "\"");
  }
  if (opts.depth) ctx.config["depth"] = *opts.depth;
  if (opts.particles) ctx.config["N"] = *opts.particles;
  if (opts.t_final) ctx.config["t_final"] = *opts.t_final;
  if (opts.seed) ctx.config["seed"] = *opts.seed;

  if (ctx.config.contains("outputs")) {
    const Json& outputs = ctx.config.at("outputs");
    if (!outputs.is_object()) throw ConfigError("\"outputs\" must be an object");
    ctx.plot = get_or<bool>(outputs, "plot", false);
  }
  ctx.hash = io::content_hash(ctx.config);
  ctx.out_dir = opts.out_dir;
  std::error_code ec;
  fs::create_directories(ctx.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + opts.out_dir);
  return ctx;
}

Json envelope(const Context& ctx, Json residual) {
  Json out = Json::object();
  out["command"] = ctx.command;
  out["scenario"] = get_or<std::string>(ctx.config, "scenario", "");
  out["config_hash"] = ctx.hash;
  out["residual"] = std::move(residual);
  return out;
}

std::string csv_header(const Context& ctx, const Json& residual) {
  return "# config_hash=" + ctx.hash + " residual=" + io::dump(residual) + "\n";
}

void write_file(const Context& ctx, const std::string& name, const std::string& body) {
  const fs::path path = ctx.out_dir / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << body;
  *ctx.log << "wrote " << path.string() << "\n";
}

void write_json_file(const Context& ctx, const std::string& name, const Json& j) {
  write_file(ctx, name, io::dump(j) + "\n");
}

// Plain matplotlib script; nothing is linked into the library for plotting.
void maybe_plot(const Context& ctx, const std::string& csv, const std::string& x,
                const std::string& y, const std::string& group, bool log_scale) {
  if (!ctx.plot) return;
  std::ostringstream py;
  py << "# generated plot script for " << csv << "\n"
     << "import csv, sys\n"
     << "import matplotlib.pyplot as plt\n"
     << "rows = [r for r in csv.DictReader(l for l in open('" << csv
     << "') if not l.startswith('#'))]\n"
     << "groups = {}\n"
     << "for r in rows:\n"
     << "    groups.setdefault(r.get('" << group << "', ''), []).append((float(r['" << x
     << "']), float(r['" << y << "'])))\n"
     << "for name, pts in sorted(groups.items()):\n"
     << "    xs, ys = zip(*pts)\n"
     << "    plt.plot(xs, ys, '.-', label=name)\n";
  if (log_scale) py << "plt.xscale('log')\nplt.yscale('log')\n";
  py << "plt.xlabel('" << x << "')\nplt.ylabel('" << y << "')\n"
     << "plt.legend()\nplt.savefig(sys.argv[1] if len(sys.argv) > 1 else '"
     << fs::path(csv).stem().string() << ".png')\n";
  write_file(ctx, "plot_" + fs::path(csv).stem().string() + ".py", py.str());
}

struct OpenInput {
  IntervalUnion set;
  Json residual;
};

OpenInput open_set(const Context& ctx) {
  const IntervalUnion raw = io::interval_union_from_json(require(ctx.config, "set"));
  TruncationPolicy policy;
  if (ctx.config.contains("truncation")) {
    const Json& t = ctx.config.at("truncation");
    policy.max_intervals = get_or<std::size_t>(t, "max_intervals", policy.max_intervals);
    policy.min_length = get_or<double>(t, "min_length", policy.min_length);
  }
  Truncation tr = truncate(raw, policy);
  if (tr.set.empty()) throw DomainError("the initial set is empty after truncation");
  Json residual = Json::object();
  residual["dropped_intervals"] = tr.dropped_count;
  residual["dropped_mass"] = tr.dropped_mass;
  return {std::move(tr.set), std::move(residual)};
}

std::vector<double> t_grid(const Context& ctx) {
  if (ctx.config.contains("t_grid")) return get_or<std::vector<double>>(ctx.config, "t_grid", {});
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(1.0 - std::ldexp(1.0, -k));
  return grid;
}

int depth_of(const Context& ctx, int fallback) {
  const int depth = get_or<int>(ctx.config, "depth", fallback);
  if (depth < 0) throw ConfigError("depth must be nonnegative");
  return depth;
}

struct CompactInput {
  MiddleCantor generator;
  CdfMeasure measure;
  int depth;
  Json description;
};

CompactInput compact_input(const Context& ctx, int default_depth) {
  const Json& gen = require(ctx.config, "generator");
  if (!gen.is_object()) throw ConfigError("\"generator\" must be an object");
  const auto type = get_or<std::string>(gen, "type", "middle-cantor");
  if (type != "middle-cantor") throw ConfigError("unknown generator type \"" + type + "\"");
  std::vector<double> hull = get_or<std::vector<double>>(gen, "hull", {0.0, 1.0});
  if (hull.size() != 2) throw ConfigError("generator hull must be [c, d]");
  const Interval h(hull[0], hull[1]);
  MiddleCantor cantor = gen.contains("ratio")
                            ? MiddleCantor(get_or<double>(gen, "ratio", 1.0 / 3.0), h)
                            : MiddleCantor::from_middle_fraction(
                                  get_or<double>(gen, "alpha", 1.0 / 3.0), h);
  const int depth = depth_of(ctx, default_depth);
  const double total = get_or<double>(ctx.config, "total_mass", 2.0);
  const int resolution = get_or<int>(ctx.config, "resolution_depth", std::max(depth + 8, 30));
  CdfMeasure mu = cantor_measure(cantor, total, resolution);

  Json desc = Json::object();
  desc["type"] = type;
  desc["ratio"] = cantor.ratio();
  desc["hull"] = Json::array({h.left(), h.right()});
  desc["total_mass"] = total;
  desc["depth"] = depth;
  return {cantor, std::move(mu), depth, std::move(desc)};
}

ResidualPolicy policy_of(const Context& ctx, const std::string& fallback) {
  const auto name = get_or<std::string>(ctx.config, "residual_policy", fallback);
  if (name == "keep") return ResidualPolicy::kKeep;
  if (name == "collapse") return ResidualPolicy::kCollapseCells;
  throw ConfigError("residual_policy must be \"keep\" or \"collapse\"");
}

Json compact_residual(const CompactConstruction& c) {
  Json r = Json::object();
  r["residual_length"] = c.residual_length;
  r["residual_mass"] = c.residual_mass;
  return r;
}

// ---------------------------------------------------------------- commands

int cmd_evolve(const Context& ctx) {
  const OpenInput in = open_set(ctx);
  const std::vector<double> times = t_grid(ctx);
  std::vector<FlowSnapshot> snaps;
  snaps.reserve(times.size());
  for (double t : times) snaps.push_back(evolve(in.set, t));  // throws before any output

  Json doc = envelope(ctx, in.residual);
  doc["initial"] = io::to_json(in.set);
  Json list = Json::array();
  for (const FlowSnapshot& s : snaps) {
    Json j = io::to_json(s);
    j["mass"] = s.density_level * s.measure();
    list.push_back(std::move(j));
  }
  doc["snapshots"] = std::move(list);
  write_json_file(ctx, "evolve.json", doc);

  std::vector<double> alphas;
  for (const Interval& iv : in.set.intervals()) {
    alphas.push_back(iv.left());
    alphas.push_back(iv.right());
  }
  std::vector<double> grid(alphas.size() * times.size());
  kernels::trajectory_grid(in.set, alphas, times, grid, kernels::Backend::kOpenMP);
  std::string csv = csv_header(ctx, in.residual) + "alpha,t,x\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = 0; j < times.size(); ++j) {
      csv += format_double(alphas[i]) + "," + format_double(times[j]) + "," +
             format_double(grid[i * times.size() + j]) + "\n";
    }
  }
  write_file(ctx, "trajectories.csv", csv);
  maybe_plot(ctx, "trajectories.csv", "t", "x", "alpha", false);
  return kOk;
}

int cmd_skeleton(const Context& ctx) {
  const OpenInput in = open_set(ctx);
  const SkeletonReport report = skeleton_report(in.set);
  Json doc = envelope(ctx, in.residual);
  const Json body = io::to_json(report.measure, report.bounds);
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  doc["near_coincident"] = report.near_coincident;
  write_json_file(ctx, "skeleton.json", doc);
  return kOk;
}

int cmd_inverse_open(const Context& ctx) {
  const AtomicMeasure mu = io::atomic_measure_from_json(require(ctx.config, "measure"));
  const OpenConstruction built = inverse_open(mu);

  Json residual = Json::object();
  residual["dropped_intervals"] = 0;
  residual["dropped_mass"] = 0.0;
  Json doc = envelope(ctx, residual);
  doc["set"] = io::to_json(built.initial_set);
  doc["degenerate"] = built.degenerate;

  const AtomicMeasure back = skeleton(built.initial_set);
  double deviation = back.size() == mu.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < back.size() && i < mu.size(); ++i) {
    deviation = std::max({deviation, std::abs(back[i].position - mu[i].position),
                          std::abs(back[i].mass - mu[i].mass)});
  }
  doc["round_trip_deviation"] = deviation;
  write_json_file(ctx, "inverse_open.json", doc);
  return kOk;
}

int cmd_inverse_compact(const Context& ctx) {
  const CompactInput in = compact_input(ctx, 8);
  const CompactConstruction built =
      inverse_compact(in.generator, in.measure, in.depth, policy_of(ctx, "keep"));
  Json doc = envelope(ctx, compact_residual(built));
  doc["generator"] = in.description;
  doc["policy"] = built.policy == ResidualPolicy::kKeep ? "keep" : "collapse";
  doc["k0"] = io::to_json(built.initial_set);
  doc["measure_k0"] = built.initial_set.measure();
  Json gaps = Json::array();
  for (std::size_t j = 0; j < built.target_gaps.size(); ++j) {
    Json g = Json::object();
    g["target"] = Json::array({built.target_gaps[j].left(), built.target_gaps[j].right()});
    g["velocity"] = built.gap_velocities[j];
    gaps.push_back(std::move(g));
  }
  doc["gap_velocities"] = std::move(gaps);
  write_json_file(ctx, "inverse_compact.json", doc);
  return kOk;
}

int cmd_verify_pushforward(const Context& ctx) {
  const CompactInput in = compact_input(ctx, 8);
  const CompactConstruction built =
      inverse_compact(in.generator, in.measure, in.depth, policy_of(ctx, "collapse"));
  const CompactSet& k0 = built.initial_set;
  const double tolerance = get_or<double>(ctx.config, "tolerance", built.residual_mass + 1e-9);

  std::vector<double> ys;
  for (const Interval& g : built.target_gaps) {
    ys.push_back(g.left());
    ys.push_back(g.right());
  }
  std::vector<double> pushed(ys.size());
  kernels::pushforward_cdf_batch(k0, ys, pushed, kernels::Backend::kOpenMP);

  double max_error = 0.0;
  std::string csv = csv_header(ctx, compact_residual(built)) + "y,pushforward,cdf,error\n";
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double target = in.measure.cdf(ys[i]);
    const double err = std::abs(pushed[i] - target);
    max_error = std::max(max_error, err);
    csv += format_double(ys[i]) + "," + format_double(pushed[i]) + "," + format_double(target) +
           "," + format_double(err) + "\n";
  }
  write_file(ctx, "pushforward.csv", csv);

  // fiber structure at random points of the target hull
  const auto samples = get_or<std::size_t>(ctx.config, "fiber_samples", 1000);
  std::mt19937_64 rng(get_or<unsigned long long>(ctx.config, "seed", 1));
  std::uniform_real_distribution<double> pick(in.measure.hull().left(), in.measure.hull().right());
  std::size_t fiber_failures = 0;
  double worst_spread = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double y = pick(rng);
    const Fiber f = fiber(k0, y);
    if (!(f.lower <= f.upper)) ++fiber_failures;
    double lo = INFINITY, hi = -INFINITY;
    for (int q = 0; q <= 8; ++q) {
      const double x = f.lower + (f.upper - f.lower) * q / 8.0;
      lo = std::min(lo, limit_map(k0, x));
      hi = std::max(hi, limit_map(k0, x));
    }
    worst_spread = std::max(worst_spread, hi - lo);
    if (hi - lo > 1e-10) ++fiber_failures;
  }

  const bool passed = max_error <= tolerance && fiber_failures == 0;
  Json doc = envelope(ctx, compact_residual(built));
  doc["generator"] = in.description;
  doc["policy"] = built.policy == ResidualPolicy::kKeep ? "keep" : "collapse";
  doc["points"] = ys.size();
  doc["max_error"] = max_error;
  doc["tolerance"] = tolerance;
  doc["fiber_samples"] = samples;
  doc["fiber_failures"] = fiber_failures;
  doc["fiber_max_spread"] = worst_spread;
  doc["passed"] = passed;
  write_json_file(ctx, "pushforward.json", doc);
  maybe_plot(ctx, "pushforward.csv", "y", "pushforward", "", false);
  if (!passed) {
    throw VerificationError("pushforward error " + format_double(max_error) + " exceeds " +
                            format_double(tolerance) + " or fiber checks failed (" +
                            std::to_string(fiber_failures) + ")");
  }
  return kOk;
}

int cmd_oracle(const Context& ctx) {
  const OpenInput in = open_set(ctx);
  const auto n = get_or<long long>(ctx.config, "N", 1000);
  if (n <= 0) throw DomainError("particle count must be positive");
  const double t_final = get_or<double>(ctx.config, "t_final", 0.999);
  if (!(t_final >= 0.0 && t_final < 1.0)) throw DomainError("t_final must lie in [0, 1)");
  oracle::IntegrationOptions opts = oracle::default_options(t_final);
  opts.dt = get_or<double>(ctx.config, "dt", opts.dt);
  opts.record_every = get_or<std::size_t>(ctx.config, "record_every", 0);
  const auto scheme = get_or<std::string>(ctx.config, "scheme", "rk4");
  if (scheme == "euler") {
    opts.scheme = oracle::Scheme::kEuler;
  } else if (scheme != "rk4") {
    throw ConfigError("scheme must be \"rk4\" or \"euler\"");
  }
  const double tol = get_or<double>(ctx.config, "tol", 1e-2);

  const oracle::ParticleSystem p = oracle::discretize(in.set, static_cast<std::size_t>(n));
  const oracle::TrajectoryTable table = oracle::integrate(p, opts);

  std::string csv = csv_header(ctx, in.residual) + "step,t,particle_id,x,v\n";
  for (const oracle::Frame& f : table.frames) {
    for (std::size_t k = 0; k < f.positions.size(); ++k) {
      csv += std::to_string(f.step) + "," + format_double(f.t) + "," + std::to_string(k) + "," +
             format_double(f.positions[k]) + "," + format_double(f.velocities[k]) + "\n";
    }
  }
  write_file(ctx, "oracle.csv", csv);

  const AtomicMeasure empirical = oracle::cluster(table.frames.back().positions, p.weight, tol);
  const AtomicMeasure exact = skeleton(in.set);
  double position_error = empirical.size() == exact.size() ? 0.0 : INFINITY;
  double mass_error = position_error;
  for (std::size_t i = 0; i < empirical.size() && i < exact.size(); ++i) {
    position_error = std::max(position_error, std::abs(empirical[i].position - exact[i].position));
    mass_error = std::max(mass_error, std::abs(empirical[i].mass - exact[i].mass));
  }
  Json doc = envelope(ctx, in.residual);
  doc["particles"] = n;
  doc["weight"] = p.weight;
  doc["t_final"] = t_final;
  doc["steps"] = table.steps;
  doc["clusters"] = io::atoms_to_json(empirical)["atoms"];
  doc["skeleton"] = io::atoms_to_json(exact)["atoms"];
  doc["max_position_error"] = position_error;
  doc["max_mass_error"] = mass_error;
  const bool checked = ctx.config.contains("position_tolerance");
  const double limit = get_or<double>(ctx.config, "position_tolerance", INFINITY);
  doc["passed"] = position_error <= limit;
  write_json_file(ctx, "clusters.json", doc);
  maybe_plot(ctx, "oracle.csv", "t", "x", "particle_id", false);
  if (checked && !(position_error <= limit)) {
    throw VerificationError("cluster position error " + format_double(position_error) +
                            " exceeds " + format_double(limit));
  }
  return kOk;
}

std::vector<double> ladder_of(const Context& ctx, double base, double ratio, int first, int last) {
  if (!ctx.config.contains("ladder")) return geometric_ladder(base, ratio, first, last);
  const Json& l = ctx.config.at("ladder");
  if (l.is_array()) return get_or<std::vector<double>>(ctx.config, "ladder", {});
  if (!l.is_object()) throw ConfigError("\"ladder\" must be an array or an object");
  return geometric_ladder(get_or<double>(l, "base", base), get_or<double>(l, "ratio", ratio),
                          get_or<int>(l, "first", first), get_or<int>(l, "last", last));
}

int cmd_dimension(const Context& ctx) {
  const auto target = get_or<std::string>(
      ctx.config, "target", ctx.config.contains("generator") ? "cantor" : "skeleton");
  DimensionFit fit;
  Json residual;
  Json extra = Json::object();
  if (target == "cantor") {
    const CompactInput in = compact_input(ctx, 10);
    const CompactConstruction built = inverse_compact(in.generator, in.measure, in.depth,
                                                      policy_of(ctx, "collapse"));
    const CompactSet image = skeleton_image(built);
    const double width = in.generator.hull().length();
    const std::vector<double> ladder =
        ladder_of(ctx, width, in.generator.ratio(), 2, std::max(2, in.depth - 2));
    const double finest = width * std::pow(in.generator.ratio(), in.depth);
    fit = box_dimension(image, ladder, finest);
    residual = compact_residual(built);
    extra["theoretical"] = in.generator.dimension();
    extra["generator"] = in.description;
  } else if (target == "skeleton") {
    const OpenInput in = open_set(ctx);
    const AtomicMeasure atoms = skeleton(in.set);
    std::vector<double> points;
    for (const Atom& a : atoms.atoms()) points.push_back(a.position);
    const double width = atoms.hull().length();  // 0 for a single atom
    const std::vector<double> ladder = ladder_of(ctx, width > 0.0 ? width : 1.0, 0.5, 0, 20);
    fit = box_dimension(points, ladder);
    residual = in.residual;
    extra["theoretical"] = 0.0;
    extra["profile"] = dimension_profile(points, ladder);
  } else {
    throw ConfigError("target must be \"cantor\" or \"skeleton\"");
  }

  std::string csv = csv_header(ctx, residual) + "eps,count\n";
  for (std::size_t i = 0; i < fit.eps.size(); ++i) {
    csv += format_double(fit.eps[i]) + "," + std::to_string(fit.counts[i]) + "\n";
  }
  write_file(ctx, "dimension.csv", csv);
  Json doc = envelope(ctx, residual);
  doc["target"] = target;
  doc["dimension"] = fit.dimension;
  doc["fit_residual"] = fit.residual;
  for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
  write_json_file(ctx, "dimension.json", doc);
  maybe_plot(ctx, "dimension.csv", "eps", "count", "", true);
  return kOk;
}

Polynomial function_by_id(const std::string& id) {
  if (id == "1") return Polynomial::monomial(0);
  if (id == "x") return Polynomial::monomial(1);
  if (id == "x2") return Polynomial::monomial(2);
  if (id == "x3") return Polynomial::monomial(3);
  if (id == "cos") return Polynomial::cos_surrogate();
  throw ConfigError("unknown test function \"" + id + "\" (use 1, x, x2, x3, cos)");
}

int cmd_converge(const Context& ctx) {
  const OpenInput in = open_set(ctx);
  const auto ids =
      get_or<std::vector<std::string>>(ctx.config, "functions", {"x", "x2", "x3", "cos"});
  const int k_max = get_or<int>(ctx.config, "k_max", 20);
  if (k_max < 1 || k_max > 50) throw ConfigError("k_max must lie in [1, 50]");
  const AtomicMeasure limit = skeleton(in.set);

  std::string csv = csv_header(ctx, in.residual) + "k,t,f,pairing,limit,error,bound\n";
  std::size_t violations = 0;
  for (const std::string& id : ids) {
    const Polynomial f = function_by_id(id);
    const double at_limit = pair_atoms(f, limit);
    for (int k = 1; k <= k_max; ++k) {
      const double t = 1.0 - std::ldexp(1.0, -k);
      const double pairing = pair_snapshot(f, evolve(in.set, t));
      const double err = weak_error(in.set, f, t);
      const double bound = weak_error_bound(in.set, f, t);
      if (err > bound + 1e-12) ++violations;
      csv += std::to_string(k) + "," + format_double(t) + "," + id + "," + format_double(pairing) +
             "," + format_double(at_limit) + "," + format_double(err) + "," +
             format_double(bound) + "\n";
    }
  }
  write_file(ctx, "converge.csv", csv);
  maybe_plot(ctx, "converge.csv", "t", "error", "f", false);
  if (violations > 0) {
    throw VerificationError(std::to_string(violations) + " weak errors exceed the linear bound");
  }
  return kOk;
}

void print_error(std::ostream& err, const char* kind, int code, const std::string& message) {
  Json record = Json::object();
  Json body = Json::object();
  body["kind"] = kind;
  body["exit_code"] = code;
  body["message"] = message;
  record["error"] = std::move(body);
  err << io::dump(record) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact 1-D aggregation patch dynamics up to blow-up"};
  app.require_subcommand(1);
  Options opts;

  const std::map<std::string, std::pair<std::string, std::function<int(const Context&)>>>
      commands = {
          {"evolve", {"snapshots of the evolved patch on a t-grid", cmd_evolve}},
          {"skeleton", {"blow-up atoms of an open patch", cmd_skeleton}},
          {"inverse-open", {"open set collapsing onto given atoms", cmd_inverse_open}},
          {"inverse-compact", {"compact set collapsing onto a Cantor measure", cmd_inverse_compact}},
          {"verify-pushforward", {"check the limit pushforward against the target cdf",
                                  cmd_verify_pushforward}},
          {"oracle", {"particle discretization and empirical skeleton", cmd_oracle}},
          {"dimension", {"box-counting dimension of a skeleton", cmd_dimension}},
          {"converge", {"weak-error table on the dyadic t-ladder", cmd_converge}},
      };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", opts.config_path, "JSON config file");
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--depth", opts.depth, "gap enumeration depth");
    sub->add_option("--particles", opts.particles, "particle count N");
    sub->add_option("--t-final", opts.t_final, "final time T < 1");
    sub->add_option("--seed", opts.seed, "seed for randomized checks");
    subs[name] = sub;
  }

  std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "config", kConfigError, e.what());
    return kConfigError;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    try {
      const Context ctx = load(name, opts, out);
      return commands.at(name).second(ctx);
    } catch (const ConfigError& e) {
      print_error(err, "config", kConfigError, e.what());
      return kConfigError;
    } catch (const nlohmann::json::exception& e) {
      print_error(err, "config", kConfigError, e.what());
      return kConfigError;
    } catch (const VerificationError& e) {
      print_error(err, "verification", kVerificationFailure, e.what());
      return kVerificationFailure;
    } catch (const DomainError& e) {
      print_error(err, "domain", kDomainError, e.what());
      return kDomainError;
    }
  }
  print_error(err, "config", kConfigError, "no subcommand given");
  return kConfigError;
}

}  // namespace aggpatch::cli
