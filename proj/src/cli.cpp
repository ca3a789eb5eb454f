#include "hsw/cli.hpp"

#include "hsw/flow.hpp"
#include "hsw/measure_io.hpp"
#include "hsw/verification.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace hsw::cli {

void RunResult::add(const std::string &key, double value) { add(key, format_double(value)); }
void RunResult::add(const std::string &key, long long value) { add(key, std::to_string(value)); }

void RunResult::write(std::ostream &out) const {
  for (const auto &[k, v] : fields_) out << k << '=' << v << '\n';
}

namespace {

struct Common {
  double p = 2.0;
  std::uint64_t seed = 0;
  int threads = 0;
  bool weighted = false;
  bool no_timing = false;
};

struct DistanceArgs {
  std::string method, file_a, file_b;
  Index L = 100, k = 1, H = 1;
  double eta = 0.1;
  Index iters = 100;
  double tolerance = 1e-10;
  Index restarts = 1;
};

struct FlowArgs {
  std::string target, method = "hsw", out_dir = ".";
  Index particles = 0, L = 128, k = 8, H = 1, steps = 2000, snapshot_every = 0;
  double step_size = 50.0;
};

struct CostArgs {
  std::string method;
  std::int64_t d = 0, n = 0, L = 0, k = 1, H = 1;
};

struct BenchArgs {
  std::vector<std::string> configs{"sw:L=100", "hsw:k=70:L=2000"};
  std::int64_t d = 8192, n = 128, repeats = 20;
  std::string format = "csv";
};

struct KArgs {
  std::int64_t d = 0, L = 0, L2 = 0, n = 0;
};

void add_common(CLI::App *cmd, Common &c, bool with_p = true) {
  if (with_p) cmd->add_option("--p", c.p, "Order p of the Wasserstein distance")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for every random draw")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (0 = available parallelism)")->capture_default_str();
  cmd->add_flag("--no-timing", c.no_timing, "Omit elapsed_seconds so output is byte-reproducible");
}

DiscreteMeasure<double> load(const std::string &path, bool weighted) {
  auto m = read_measure_csv(path, weighted);
  const auto report = validate(m);
  if (!report.ok()) throw ParseError(0, path + ": " + report.str());
  return m;
}

void add_term_stats(RunResult &r, const std::vector<double> &terms) {
  double mean = 0, max = 0;
  for (double t : terms) {
    mean += t;
    max = std::max(max, t);
  }
  mean /= static_cast<double>(terms.size());
  double var = 0;
  for (double t : terms) var += (t - mean) * (t - mean);
  var /= static_cast<double>(terms.size());
  r.add("terms", static_cast<long long>(terms.size()));
  r.add("term_mean", mean);
  r.add("term_max", max);
  r.add("term_std", std::sqrt(var));
}

std::string join(const Vector<double> &v) {
  std::string s;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

void header(RunResult &r, const std::string &command, const Common &c) {
  r.add("command", command);
  r.add("version", std::string(kVersion));
  r.add("seed", std::to_string(c.seed));
}

int cmd_distance(const DistanceArgs &a, const Common &c, std::ostream &out) {
  const auto mu = load(a.file_a, c.weighted);
  const auto nu = load(a.file_b, c.weighted);
  if (mu.dim() != nu.dim()) {
    throw DimensionMismatch("dimension mismatch: " + a.file_a + " has d=" + std::to_string(mu.dim()) + ", " +
                            a.file_b + " has d=" + std::to_string(nu.dim()));
  }
  RunResult r;
  header(r, "distance", c);
  r.add("method", a.method);
  r.add("file_a", a.file_a);
  r.add("file_b", a.file_b);
  r.add("p", c.p);

  const auto start = std::chrono::steady_clock::now();
  EstimatorConfig cfg;
  cfg.p = c.p;
  cfg.L = a.L;
  cfg.k = a.k;
  cfg.H = a.H;
  cfg.seed = c.seed;
  MaxConfig mcfg;
  mcfg.eta = a.eta;
  mcfg.T = a.iters;
  mcfg.tolerance = a.tolerance;
  mcfg.restarts = a.restarts;
  mcfg.seed = c.seed;

  if (a.method == "sw" || a.method == "hsw") {
    const bool hier = a.method == "hsw";
    const auto est = hier ? hsw(mu, nu, cfg) : sw(mu, nu, cfg);
    r.add("L", static_cast<long long>(a.L));
    if (hier) {
      r.add("k", static_cast<long long>(a.k));
      r.add("H", static_cast<long long>(a.H));
    }
    r.add("value", est.value);
    add_term_stats(r, est.per_projection);
  } else if (a.method == "max-sw") {
    const auto res = max_sw(mu, nu, c.p, mcfg);
    r.add("eta", a.eta);
    r.add("iters", static_cast<long long>(a.iters));
    r.add("value", res.value);
    r.add("iterations", static_cast<long long>(res.trajectory.size() - 1));
    r.add("theta", join(res.theta));
  } else if (a.method == "max-hsw") {
    const auto res = max_hsw(mu, nu, c.p, a.k, mcfg);
    r.add("k", static_cast<long long>(a.k));
    r.add("eta", a.eta);
    r.add("iters", static_cast<long long>(a.iters));
    r.add("value", res.value);
    r.add("iterations", static_cast<long long>(res.trajectory.size() - 1));
    r.add("psi", join(res.psi));
  } else if (a.method == "exact") {
    r.add("value", exact_wasserstein(mu, nu, c.p));
  } else {
    throw InvalidArgument("unknown method '" + a.method + "'");
  }
  if (!c.no_timing) {
    r.add("elapsed_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  r.write(out);
  return kOk;
}

int cmd_flow(const FlowArgs &a, const Common &c, std::ostream &out) {
  const auto target = load(a.target, c.weighted);
  FlowConfig cfg;
  cfg.method = parse_method(a.method);
  cfg.p = c.p;
  cfg.L = a.L;
  cfg.k = a.k;
  cfg.H = a.H;
  cfg.steps = a.steps;
  cfg.step_size = a.step_size;
  cfg.snapshot_every = a.snapshot_every;
  cfg.seed = c.seed;
  const Index n = a.particles > 0 ? a.particles : target.size();

  std::filesystem::create_directories(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  Index snapshots = 0;
  auto sink = [&](Index step, const Matrix<double> &x) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%06lld.csv", static_cast<long long>(step));
    std::ofstream f(dir / name);
    write_points_csv(f, x);
    ++snapshots;
  };

  const auto start = std::chrono::steady_clock::now();
  const auto res = run_flow(target, initial_particles(n, target.dim(), c.seed), cfg, sink);
  {
    std::ofstream f(dir / "loss.csv");
    f << "step,loss\n";
    for (std::size_t s = 0; s < res.loss.size(); ++s) f << s << ',' << format_double(res.loss[s]) << '\n';
  }

  RunResult r;
  header(r, "flow", c);
  r.add("method", a.method);
  r.add("target", a.target);
  r.add("particles", static_cast<long long>(n));
  r.add("steps", static_cast<long long>(a.steps));
  r.add("step_size", a.step_size);
  r.add("initial_loss", res.loss.front());
  r.add("final_loss", res.loss.back());
  r.add("snapshots", static_cast<long long>(snapshots));
  r.add("loss_file", (dir / "loss.csv").string());
  if (!c.no_timing) {
    r.add("elapsed_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  r.write(out);
  return kOk;
}

std::string millions(std::uint64_t units) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << static_cast<double>(units) / 1e6;
  return os.str();
}

int cmd_cost(const CostArgs &a, std::ostream &out) {
  const auto rep = cost_model(parse_method(a.method), a.d, a.n, a.L, a.k, a.H);
  RunResult r;
  r.add("command", "cost");
  r.add("version", std::string(kVersion));
  r.add("method", to_string(rep.method));
  r.add("d", static_cast<long long>(rep.d));
  r.add("n", static_cast<long long>(rep.n));
  r.add("L", static_cast<long long>(rep.L));
  if (rep.method == Method::kHSW) {
    r.add("k", static_cast<long long>(rep.k));
    r.add("H", static_cast<long long>(rep.H));
  }
  r.add("compute_units", std::to_string(rep.compute_units));
  r.add("projection_units", std::to_string(rep.projection_units));
  r.add("compute_millions", millions(rep.compute_units));
  r.add("projection_millions", millions(rep.projection_units));
  r.write(out);
  return kOk;
}

int cmd_bench(const BenchArgs &a, const Common &c, std::ostream &out) {
  std::vector<BenchConfig> configs;
  for (const auto &s : a.configs) configs.push_back(parse_bench_config(s));
  if (a.format != "csv" && a.format != "text") throw InvalidArgument("--format must be csv or text");
  const auto rows = bench(configs, a.d, a.n, a.repeats, c.seed);
  if (a.format == "csv") {
    write_bench_csv(out, rows);
    return kOk;
  }
  for (const auto &row : rows) {
    RunResult r;
    r.add("command", "bench");
    r.add("method", to_string(row.cost.method));
    r.add("L", static_cast<long long>(row.cost.L));
    r.add("k", static_cast<long long>(row.cost.k));
    r.add("H", static_cast<long long>(row.cost.H));
    r.add("compute_units", std::to_string(row.cost.compute_units));
    r.add("projection_units", std::to_string(row.cost.projection_units));
    r.add("median_seconds", row.median_seconds);
    r.write(out);
  }
  return kOk;
}

int cmd_recommend_k(const KArgs &a, std::ostream &out) {
  RunResult r;
  r.add("command", "recommend-k");
  r.add("version", std::string(kVersion));
  KAdvice advice;
  if (a.L2 > 0) {
    advice = recommend_k_vs(a.d, a.L, a.L2, a.n);
    r.add("rule", "vs");
  } else {
    advice = recommend_k(a.d, a.L);
    r.add("rule", "same-L");
  }
  r.add("k", static_cast<long long>(advice.k));
  if (!advice.warning.empty()) r.add("warning", advice.warning);
  r.write(out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Sliced and hierarchical sliced Wasserstein distances", "hsw"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common common;
  DistanceArgs dist;
  FlowArgs flow;
  CostArgs cost;
  BenchArgs bargs;
  KArgs kargs;

  auto *d = app.add_subcommand("distance", "Distance between two CSV point clouds");
  d->add_option("method", dist.method, "sw | hsw | max-sw | max-hsw | exact")
      ->required()
      ->check(CLI::IsMember({"sw", "hsw", "max-sw", "max-hsw", "exact"}));
  d->add_option("file_a", dist.file_a)->required();
  d->add_option("file_b", dist.file_b)->required();
  d->add_option("--L", dist.L, "Number of (final) projections")->capture_default_str();
  d->add_option("--k", dist.k, "Bottleneck projections (hsw, max-hsw)")->capture_default_str();
  d->add_option("--H", dist.H, "Heads (hsw)")->capture_default_str();
  d->add_option("--eta", dist.eta, "Ascent step (max-*)")->capture_default_str();
  d->add_option("--iters", dist.iters, "Maximum ascent iterations (max-*)")->capture_default_str();
  d->add_option("--tolerance", dist.tolerance, "Stop when parameters move less than this")->capture_default_str();
  d->add_option("--restarts", dist.restarts, "Independent ascent restarts (max-*)")->capture_default_str();
  d->add_flag("--weighted", common.weighted, "Last CSV column holds weights");
  add_common(d, common);

  auto *f = app.add_subcommand("flow", "Gradient flow of particles toward a target point cloud");
  f->add_option("target_file", flow.target)->required();
  f->add_option("--particles", flow.particles, "Particle count (0 = target size)")->capture_default_str();
  f->add_option("--method", flow.method)->check(CLI::IsMember({"sw", "hsw"}))->capture_default_str();
  f->add_option("--L", flow.L)->capture_default_str();
  f->add_option("--k", flow.k)->capture_default_str();
  f->add_option("--H", flow.H)->capture_default_str();
  f->add_option("--steps", flow.steps)->capture_default_str();
  f->add_option("--step-size", flow.step_size)->capture_default_str();
  f->add_option("--snapshot-every", flow.snapshot_every, "0 disables intermediate snapshots")->capture_default_str();
  f->add_option("--out-dir", flow.out_dir)->capture_default_str();
  f->add_flag("--weighted", common.weighted, "Last CSV column holds weights");
  add_common(f, common);

  auto *c = app.add_subcommand("cost", "Modeled compute and projection memory");
  c->add_option("method", cost.method, "sw | hsw")->required()->check(CLI::IsMember({"sw", "hsw"}));
  c->add_option("--d", cost.d)->required();
  c->add_option("--n", cost.n)->required();
  c->add_option("--L", cost.L)->required();
  c->add_option("--k", cost.k)->capture_default_str();
  c->add_option("--H", cost.H)->capture_default_str();

  auto *b = app.add_subcommand("bench", "Time estimators against the cost model");
  b->add_option("--config", bargs.configs, "e.g. sw:L=100 hsw:k=70:L=2000")->capture_default_str();
  b->add_option("--d", bargs.d)->capture_default_str();
  b->add_option("--n", bargs.n)->capture_default_str();
  b->add_option("--repeats", bargs.repeats)->capture_default_str();
  b->add_option("--format", bargs.format, "csv | text")->capture_default_str();
  add_common(b, common, false);

  auto *k = app.add_subcommand("recommend-k", "Largest k keeping HSW no slower than SW");
  k->add_option("--d", kargs.d)->required();
  k->add_option("--L", kargs.L, "SW projections (L1 when --L2 is given)")->required();
  k->add_option("--L2", kargs.L2, "HSW final projections");
  k->add_option("--n", kargs.n, "Supports per measure (required with --L2)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion &e) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }

  try {
    hsw::set_threads(common.threads);
    if (d->parsed()) return cmd_distance(dist, common, out);
    if (f->parsed()) return cmd_flow(flow, common, out);
    if (c->parsed()) return cmd_cost(cost, out);
    if (b->parsed()) return cmd_bench(bargs, common, out);
    if (k->parsed()) {
      if (kargs.L2 > 0 && kargs.n < 1) throw InvalidArgument("--n is required with --L2");
      return cmd_recommend_k(kargs, out);
    }
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const DimensionMismatch &e) {
    err << "dimension mismatch: " << e.what() << '\n';
    return kDimensionMismatch;
  } catch (const InvalidArgument &e) {
    err << "invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const UnsupportedConfiguration &e) {
    err << "unsupported configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const DomainError &e) {
    err << "domain error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const ResourceLimit &e) {
    err << "resource limit: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace hsw::cli
