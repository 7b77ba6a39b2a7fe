// lssl: command-line front end for the graph-based semi-supervised learning library.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>

#include "lssl/classify.hpp"
#include "lssl/experiments.hpp"
#include "lssl/kernels.hpp"
#include "lssl/ridge.hpp"
#include "lssl/verify.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitVerify = 2;

struct ClassifyArgs {
  std::string edges;
  std::string labels;
  std::string method = "rl";
  double beta = 1.0;
  double t = 1.0;
  double mu = 1.0;
  double sigma = 0.0;
  std::string weights = "adjacency";
  std::string solver = "cg";
  double tol = 1e-10;
  bool allow_components = false;
};

lssl::KernelSpec kernel_from(const ClassifyArgs& a) {
  lssl::SweepConfig cfg;
  cfg.method = lssl::parse_method(a.method);
  cfg.sigma = a.sigma;
  if (a.weights == "adjacency") {
    cfg.weights = lssl::AdjacencyWeights{};
  } else if (a.weights.rfind("lazy:", 0) == 0) {
    cfg.weights = lssl::LazyWeights{std::stod(a.weights.substr(5))};
  } else {
    throw lssl::InputError("--weights must be 'adjacency' or 'lazy:TAU'");
  }
  cfg.solver.kind = lssl::parse_solver_kind(a.solver);
  cfg.solver.tolerance = a.tol;
  cfg.heat_tol = a.tol;
  switch (cfg.method) {
    case lssl::SweptMethod::regularized_laplacian: return cfg.kernel_at(a.beta);
    case lssl::SweptMethod::heat_standard:
    case lssl::SweptMethod::heat_normalized:
    case lssl::SweptMethod::heat_pagerank: return cfg.kernel_at(a.t);
    case lssl::SweptMethod::pagerank:
    case lssl::SweptMethod::generalized: return cfg.kernel_at(a.mu);
  }
  throw lssl::InputError("unknown method");
}

int run_classify(const ClassifyArgs& a) {
  lssl::LoadOptions load;
  load.allow_components = a.allow_components;
  const lssl::Graph g = lssl::load_edge_list_file(a.edges, load);
  const auto pairs = lssl::load_label_pairs_file(a.labels, g);
  int n_classes = 0;
  lssl::SeedSet seeds;
  for (const auto& [node, cls] : pairs) {
    seeds.push_back({node, cls});
    n_classes = std::max(n_classes, cls + 1);
  }
  const lssl::KernelSpec spec = kernel_from(a);
  std::vector<int> predicted(static_cast<std::size_t>(g.n_nodes()), 0);

  const auto comp = lssl::connected_components(g);
  if (comp.count <= 1) {
    predicted = lssl::classify(lssl::apply_kernel(g, spec, lssl::build_label_matrix(seeds, g.n_nodes(), n_classes)));
  } else {
    // each component on its own; classes without seeds there get a zero column
    for (lssl::Index c = 0; c < comp.count; ++c) {
      std::vector<lssl::Index> nodes;
      std::vector<lssl::Index> local(static_cast<std::size_t>(g.n_nodes()), -1);
      for (lssl::Index v = 0; v < g.n_nodes(); ++v) {
        if (comp.label[static_cast<std::size_t>(v)] == c) {
          local[static_cast<std::size_t>(v)] = static_cast<lssl::Index>(nodes.size());
          nodes.push_back(v);
        }
      }
      const lssl::Graph sub = lssl::induced_subgraph(g, nodes);
      Eigen::MatrixXd y = Eigen::MatrixXd::Zero(sub.n_nodes(), n_classes);
      for (const auto& s : seeds) {
        if (local[static_cast<std::size_t>(s.node)] >= 0) y(local[static_cast<std::size_t>(s.node)], s.cls) = 1.0;
      }
      if (y.sum() == 0.0) {
        std::cerr << "warning: component " << c << " (" << nodes.size() << " nodes) has no labelled nodes\n";
      }
      const auto local_pred = sub.n_nodes() > 1 ? lssl::classify(lssl::apply_kernel(sub, spec, y))
                                                : lssl::classify(y);
      for (std::size_t k = 0; k < nodes.size(); ++k) predicted[static_cast<std::size_t>(nodes[k])] = local_pred[k];
    }
  }
  for (lssl::Index v = 0; v < g.n_nodes(); ++v) {
    std::cout << g.name_of(v) << ' ' << predicted[static_cast<std::size_t>(v)] << '\n';
  }
  return 0;
}

int run_sweep_cmd(const std::string& config, const std::string& out, std::optional<unsigned> threads) {
  lssl::SweepConfig cfg = lssl::load_sweep_config(config);
  if (threads) cfg.threads = *threads;
  const auto result = lssl::run_sweep(cfg);
  if (out.empty() || out == "-") {
    lssl::write_csv(result, std::cout);
  } else {
    std::ofstream file(out);
    if (!file) throw lssl::InputError("cannot open output '" + out + "'");
    lssl::write_csv(result, file);
  }
  return 0;
}

int run_verify(const lssl::VerifyOptions& opt) {
  const auto results = lssl::run_property_suite(opt);
  lssl::print_report(results, std::cout);
  for (const auto& r : results) {
    if (!r.passed) return kExitVerify;
  }
  return 0;
}

int run_ridge(const std::string& input, double lambda) {
  const auto comparisons = lssl::load_comparisons_file(input);
  const auto est = lssl::ridge_estimate(comparisons, lambda);
  if (!est.connected()) {
    std::cerr << "warning: comparison graph has " << est.components.count
              << " components; values are comparable only within a component\n";
  }
  std::cout << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (lssl::Index i = 0; i < est.values.size(); ++i) std::cout << i << ' ' << est.values[i] << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized Laplacian semi-supervised learning on graphs"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Classify every node from a few labelled seeds");
  classify->add_option("--edges", ca.edges, "Edge list: 'i j [w]' lines")->required();
  classify->add_option("--labels", ca.labels, "Seed labels: 'node class' lines")->required();
  classify->add_option("--method", ca.method,
                       "rl | heat-standard | heat-normalized | heat-pagerank | pagerank | generalized");
  classify->add_option("--beta", ca.beta, "Regularization parameter of the RL method");
  classify->add_option("--t", ca.t, "Heat kernel time");
  classify->add_option("--mu", ca.mu, "Fidelity weight of the generalized / PageRank method");
  classify->add_option("--sigma", ca.sigma, "Degree exponent of the generalized method");
  classify->add_option("--weights", ca.weights, "adjacency | lazy:TAU (generalized method)");
  classify->add_option("--solver", ca.solver, "cg | power | cholesky");
  classify->add_option("--tol", ca.tol, "Solver tolerance");
  classify->add_flag("--allow-components", ca.allow_components, "Classify each connected component separately");

  std::string config;
  std::string out;
  std::optional<unsigned> threads;
  auto* sweep = app.add_subcommand("sweep", "Precision-vs-parameter sweep, written as CSV");
  sweep->add_option("--config", config, "Key-value sweep configuration")->required();
  sweep->add_option("--out", out, "CSV output path ('-' for stdout)");
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

  lssl::VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run the property suite and print a pass/fail table");
  verify->add_option("--max-nodes", vo.max_nodes, "Largest random graph");
  verify->add_option("--graphs", vo.graphs_per_check, "Random graphs per check");
  verify->add_option("--seed", vo.seed, "Random seed");

  std::string ridge_input;
  double lambda = 1.0;
  auto* ridge = app.add_subcommand("ridge", "Ridge estimate of item values from paired comparisons");
  ridge->add_option("--lambda", lambda, "Ridge parameter (beta = 1/lambda)")->required();
  ridge->add_option("--input", ridge_input, "Comparisons: 'i j r' lines")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*classify) return run_classify(ca);
    if (*sweep) return run_sweep_cmd(config, out, threads);
    if (*verify) return run_verify(vo);
    if (*ridge) return run_ridge(ridge_input, lambda);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
