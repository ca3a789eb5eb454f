#include "hsw/verification.hpp"
#include "hsw/measure_io.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace hsw {

BenchConfig parse_bench_config(const std::string &spec) {
  std::stringstream ss(spec);
  std::string part;
  BenchConfig cfg;
  bool first = true;
  while (std::getline(ss, part, ':')) {
    if (first) {
      cfg.method = parse_method(part);
      first = false;
      continue;
    }
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw InvalidArgument("bad bench config field '" + part + "'");
    const std::string key = part.substr(0, eq);
    std::int64_t value = 0;
    try {
      value = std::stoll(part.substr(eq + 1));
    } catch (const std::exception &) {
      throw InvalidArgument("bad bench config value in '" + part + "'");
    }
    if (key == "L") cfg.L = value;
    else if (key == "k") cfg.k = value;
    else if (key == "H") cfg.H = value;
    else throw InvalidArgument("unknown bench config key '" + key + "'");
  }
  if (first) throw InvalidArgument("empty bench config");
  if (cfg.L < 1 || cfg.k < 1 || cfg.H < 1) throw InvalidArgument("bench config values must be >= 1");
  return cfg;
}

std::vector<BenchRow> bench(const std::vector<BenchConfig> &configs, std::int64_t d, std::int64_t n,
                            std::int64_t repeats, std::uint64_t seed) {
  if (d < 1 || n < 1 || repeats < 1) throw InvalidArgument("bench needs d, n, repeats >= 1");
  Rng data = Rng(seed).split(Stream::kData);
  Matrix<double> x(n, d), y(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) x(i, j) = data.normal();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) y(i, j) = 1.0 + data.normal();
  const auto mu = DiscreteMeasure<double>::uniform(std::move(x));
  const auto nu = DiscreteMeasure<double>::uniform(std::move(y));

  std::vector<EstimatorConfig> cfgs;
  std::vector<BenchRow> rows;
  for (const auto &c : configs) {
    EstimatorConfig cfg;
    cfg.L = c.L;
    cfg.k = c.k;
    cfg.H = c.H;
    cfg.seed = seed;
    cfgs.push_back(cfg);
    rows.push_back({cost_model(c.method, d, n, c.L, c.k, c.H), 0.0, {}});
  }
  const auto run = [&](std::size_t i) {
    return configs[i].method == Method::kSW ? sw(mu, nu, cfgs[i]).elapsed_seconds
                                            : hsw(mu, nu, cfgs[i]).elapsed_seconds;
  };
  for (std::size_t i = 0; i < configs.size(); ++i) run(i);
  // Round-robin so slow drift in machine load hits every config alike.
  for (std::int64_t r = 0; r < repeats; ++r)
    for (std::size_t i = 0; i < configs.size(); ++i) rows[i].samples.push_back(run(i));
  for (auto &row : rows) {
    std::vector<double> sorted = row.samples;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    row.median_seconds = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  }
  return rows;
}

void write_bench_csv(std::ostream &out, const std::vector<BenchRow> &rows) {
  out << "method,d,n,L,k,H,compute_units,projection_units,median_seconds\n";
  for (const auto &r : rows) {
    const auto &c = r.cost;
    out << to_string(c.method) << ',' << c.d << ',' << c.n << ',' << c.L << ',' << c.k << ',' << c.H << ','
        << c.compute_units << ',' << c.projection_units << ',' << format_double(r.median_seconds) << '\n';
  }
}

}  // namespace hsw
