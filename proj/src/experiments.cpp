#include "lssl/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "lssl/parallel.hpp"
#include "lssl/random.hpp"

namespace lssl {

namespace detail {
extern const std::string_view kLesMisEdges;
extern const std::string_view kLesMisLabels;
}  // namespace detail

namespace {

constexpr std::uint64_t kLesMisEdgesChecksum = 0xb6b6e32d25feb63eULL;
constexpr std::uint64_t kLesMisLabelsChecksum = 0xbba5d9d3d27e7d61ULL;

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& text, const std::string& key) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError("config: bad number '" + text + "' for key '" + key + "'");
  }
  return v;
}

long long to_integer(const std::string& text, const std::string& key) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError("config: bad integer '" + text + "' for key '" + key + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

Dataset bundled_lesmis() {
  if (fnv1a(detail::kLesMisEdges) != kLesMisEdgesChecksum ||
      fnv1a(detail::kLesMisLabels) != kLesMisLabelsChecksum) {
    throw InputError("bundled Les Miserables data failed its checksum");
  }
  std::istringstream edges{std::string(detail::kLesMisEdges)};
  Graph g = load_edge_list(edges);
  std::istringstream labels{std::string(detail::kLesMisLabels)};
  GroundTruth truth = ground_truth_from_pairs(load_label_pairs(labels, g), g.n_nodes());
  return {std::move(g), std::move(truth)};
}

Dataset load_dataset(const std::string& edges_path, const std::string& labels_path) {
  Graph g = load_edge_list_file(edges_path);
  GroundTruth truth = ground_truth_from_pairs(load_label_pairs_file(labels_path, g), g.n_nodes());
  return {std::move(g), std::move(truth)};
}

Dataset synthetic_wiki_fixture(std::uint64_t rng_seed) {
  const std::vector<Index> sizes{106, 368, 435};
  constexpr double kIntraDegree = 6.0;
  constexpr double kInterDegree = 2.0;
  std::vector<int> assignment;
  for (std::size_t k = 0; k < sizes.size(); ++k) assignment.insert(assignment.end(), sizes[k], static_cast<int>(k));
  const Index n = static_cast<Index>(assignment.size());

  auto rng = make_rng(rng_seed);
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const auto ki = static_cast<std::size_t>(assignment[i]);
      const auto kj = static_cast<std::size_t>(assignment[j]);
      const double p = ki == kj ? kIntraDegree / static_cast<double>(sizes[ki] - 1)
                                : kInterDegree / static_cast<double>(n - sizes[ki]);
      if (uniform_unit(rng) < p) edges.push_back({i, j, 1.0});
    }
  }
  // a random path through each class plus one bridge per class pair keeps it connected
  Index offset = 0;
  std::vector<Index> firsts;
  for (Index size : sizes) {
    std::vector<Index> order(static_cast<std::size_t>(size));
    for (Index v = 0; v < size; ++v) order[static_cast<std::size_t>(v)] = offset + v;
    for (Index v = size - 1; v > 0; --v) {
      std::swap(order[static_cast<std::size_t>(v)],
                order[static_cast<std::size_t>(uniform_index(rng, static_cast<std::uint64_t>(v + 1)))]);
    }
    for (std::size_t v = 1; v < order.size(); ++v) edges.push_back({order[v - 1], order[v], 1.0});
    firsts.push_back(order.front());
    offset += size;
  }
  for (std::size_t a = 0; a < firsts.size(); ++a) {
    for (std::size_t b = a + 1; b < firsts.size(); ++b) edges.push_back({firsts[a], firsts[b], 1.0});
  }
  // unweighted graph: collapse duplicates instead of summing them
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::minmax(x.i, x.j) < std::minmax(y.i, y.j);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& x, const Edge& y) { return std::minmax(x.i, x.j) == std::minmax(y.i, y.j); }),
              edges.end());
  Graph g(n, std::move(edges));
  return {std::move(g), GroundTruth(std::move(assignment), 3)};
}

std::string_view method_tag(SweptMethod m) {
  switch (m) {
    case SweptMethod::regularized_laplacian: return "rl";
    case SweptMethod::heat_standard: return "heat-standard";
    case SweptMethod::heat_normalized: return "heat-normalized";
    case SweptMethod::heat_pagerank: return "heat-pagerank";
    case SweptMethod::pagerank: return "pagerank";
    case SweptMethod::generalized: return "generalized";
  }
  return "unknown";
}

SweptMethod parse_method(std::string_view tag) {
  for (auto m : {SweptMethod::regularized_laplacian, SweptMethod::heat_standard, SweptMethod::heat_normalized,
                 SweptMethod::heat_pagerank, SweptMethod::pagerank, SweptMethod::generalized}) {
    if (tag == method_tag(m)) return m;
  }
  throw InputError("unknown method '" + std::string(tag) + "'");
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) throw InputError("log grid: need 0 < lo <= hi and count >= 1");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = std::pow(10.0, a + (b - a) * k / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

void SweepConfig::validate() const {
  if (grid.empty()) throw InputError("sweep: grid must not be empty");
  if (!std::is_sorted(grid.begin(), grid.end())) throw InputError("sweep: grid must be sorted ascending");
  if (n_trials < 1) throw InputError("sweep: need at least one trial");
  if (per_class < 1) throw InputError("sweep: per_class must be at least 1");
  solver.validate();
}

KernelSpec SweepConfig::kernel_at(double value) const {
  KernelSpec spec;
  spec.solver = solver;
  spec.heat_tol = heat_tol;
  switch (method) {
    case SweptMethod::regularized_laplacian: spec.method = RegularizedLaplacianKernel{value}; break;
    case SweptMethod::heat_standard: spec.method = HeatKernel{HeatKind::standard, value}; break;
    case SweptMethod::heat_normalized: spec.method = HeatKernel{HeatKind::normalized, value}; break;
    case SweptMethod::heat_pagerank: spec.method = HeatKernel{HeatKind::pagerank, value}; break;
    case SweptMethod::pagerank: spec.method = GeneralizedKernel{0.0, value, AdjacencyWeights{}}; break;
    case SweptMethod::generalized: spec.method = GeneralizedKernel{sigma, value, weights}; break;
  }
  return spec;
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto sep = line.find_first_of(":=");
    if (sep == std::string::npos) {
      throw InputError("config line " + std::to_string(line_no) + ": expected 'key: value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, sep));
    const std::string value = trim(std::string_view(line).substr(sep + 1));
    if (key == "edges") {
      cfg.edges_path = value;
    } else if (key == "labels") {
      cfg.labels_path = value;
    } else if (key == "method") {
      cfg.method = parse_method(value);
    } else if (key == "sigma") {
      cfg.sigma = to_double(value, key);
    } else if (key == "weights") {
      if (value == "adjacency") {
        cfg.weights = AdjacencyWeights{};
      } else if (value.rfind("lazy:", 0) == 0) {
        cfg.weights = LazyWeights{to_double(value.substr(5), key)};
      } else {
        throw InputError("config: weights must be 'adjacency' or 'lazy:TAU'");
      }
    } else if (key == "grid") {
      if (value.rfind("logspace:", 0) == 0) {
        const auto parts = split(value.substr(9), ':');
        if (parts.size() != 3) throw InputError("config: grid logspace needs LO:HI:N");
        cfg.grid = log_grid(to_double(parts[0], key), to_double(parts[1], key),
                            static_cast<int>(to_integer(parts[2], key)));
      } else {
        cfg.grid.clear();
        for (const auto& part : split(value, ',')) cfg.grid.push_back(to_double(part, key));
      }
    } else if (key == "strategy") {
      if (value == "uniform") {
        cfg.strategy = UniformSeeding{};
      } else if (value.rfind("high-degree:", 0) == 0) {
        cfg.strategy = HighDegreeSeeding{static_cast<Index>(to_integer(value.substr(12), key))};
      } else {
        throw InputError("config: strategy must be 'uniform' or 'high-degree:POOL'");
      }
    } else if (key == "per_class") {
      cfg.per_class = static_cast<Index>(to_integer(value, key));
    } else if (key == "trials") {
      cfg.n_trials = static_cast<int>(to_integer(value, key));
    } else if (key == "seed") {
      cfg.rng_seed = static_cast<std::uint64_t>(to_integer(value, key));
    } else if (key == "solver") {
      cfg.solver.kind = parse_solver_kind(value);
    } else if (key == "tol") {
      cfg.solver.tolerance = to_double(value, key);
    } else if (key == "heat_tol") {
      cfg.heat_tol = to_double(value, key);
    } else if (key == "include_seeds") {
      if (value != "true" && value != "false") throw InputError("config: include_seeds must be true or false");
      cfg.include_seeds = value == "true";
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(to_integer(value, key));
    } else {
      throw InputError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  return parse_sweep_config(in);
}

SweepResult run_sweep(const Dataset& data, const SweepConfig& cfg) {
  cfg.validate();
  const Graph& g = data.graph;
  const GroundTruth& truth = data.truth;
  const int k = truth.n_classes();
  const Index n = g.n_nodes();

  std::vector<SeedSet> seeds(static_cast<std::size_t>(cfg.n_trials));
  Eigen::MatrixXd y(n, static_cast<Index>(cfg.n_trials) * k);
  for (int trial = 0; trial < cfg.n_trials; ++trial) {
    auto& s = seeds[static_cast<std::size_t>(trial)];
    s = sample_seeds(truth, g, cfg.strategy, cfg.per_class, cfg.rng_seed ^ static_cast<std::uint64_t>(trial));
    y.middleCols(static_cast<Index>(trial) * k, k) = build_label_matrix(s, n, k);
  }

  const std::string tag(method_tag(cfg.method));
  std::vector<double> grid = cfg.grid;
  std::sort(grid.begin(), grid.end());
  std::vector<std::vector<SweepRow>> per_value(grid.size());
  parallel_for(static_cast<std::ptrdiff_t>(grid.size()), cfg.threads, [&](std::ptrdiff_t v) {
    const double value = grid[static_cast<std::size_t>(v)];
    const Eigen::MatrixXd f = apply_kernel(g, cfg.kernel_at(value), y);
    auto& rows = per_value[static_cast<std::size_t>(v)];
    for (int trial = 0; trial < cfg.n_trials; ++trial) {
      const auto predicted = classify(f.middleCols(static_cast<Index>(trial) * k, k));
      rows.push_back({tag, value, trial,
                      precision(predicted, truth, seeds[static_cast<std::size_t>(trial)], cfg.include_seeds)});
    }
  });

  SweepResult out;
  for (auto& rows : per_value) out.rows.insert(out.rows.end(), rows.begin(), rows.end());
  return out;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.edges_path.empty() != cfg.labels_path.empty()) {
    throw InputError("sweep: give both edges and labels, or neither for the bundled data");
  }
  const Dataset data = cfg.edges_path.empty() ? bundled_lesmis() : load_dataset(cfg.edges_path, cfg.labels_path);
  return run_sweep(data, cfg);
}

void write_csv(const SweepResult& result, std::ostream& out) {
  std::vector<std::string> methods;
  for (const auto& row : result.rows) {
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end()) methods.push_back(row.method);
  }
  std::vector<SweepRow> rows = result.rows;
  std::stable_sort(rows.begin(), rows.end(), [&](const SweepRow& a, const SweepRow& b) {
    const auto ma = std::find(methods.begin(), methods.end(), a.method) - methods.begin();
    const auto mb = std::find(methods.begin(), methods.end(), b.method) - methods.begin();
    if (ma != mb) return ma < mb;
    if (a.param != b.param) return a.param < b.param;
    return a.trial < b.trial;
  });
  out << "method,param,trial,precision\n";
  for (const auto& row : rows) {
    out << row.method << ',' << format_g6(row.param) << ',' << row.trial << ',' << format_g6(row.precision) << '\n';
  }
  if (!out) throw InputError("csv: write failure");
}

SweepResult read_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  if (!std::getline(in, line) || trim(line) != "method,param,trial,precision") {
    throw InputError("csv: missing or wrong header");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 4) throw InputError("csv line " + std::to_string(line_no) + ": expected 4 fields");
    result.rows.push_back({cells[0], to_double(cells[1], "param"), static_cast<int>(to_integer(cells[2], "trial")),
                           to_double(cells[3], "precision")});
  }
  return result;
}

std::map<std::string, std::vector<CurvePoint>> summarize(const SweepResult& result) {
  std::map<std::string, std::map<double, std::vector<double>>> groups;
  for (const auto& row : result.rows) groups[row.method][row.param].push_back(row.precision);
  std::map<std::string, std::vector<CurvePoint>> out;
  for (const auto& [method, by_param] : groups) {
    auto& curve = out[method];
    for (const auto& [param, values] : by_param) {
      CurvePoint p;
      p.param = param;
      p.trials = static_cast<int>(values.size());
      double sum = 0.0;
      for (double v : values) sum += v;
      p.mean = sum / p.trials;
      double ss = 0.0;
      for (double v : values) ss += (v - p.mean) * (v - p.mean);
      p.stddev = p.trials > 1 ? std::sqrt(ss / (p.trials - 1)) : 0.0;
      curve.push_back(p);
    }
  }
  return out;
}

}  // namespace lssl
