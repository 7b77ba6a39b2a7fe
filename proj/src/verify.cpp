#include "lssl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lssl/classify.hpp"
#include "lssl/experiments.hpp"
#include "lssl/kernels.hpp"
#include "lssl/proximity.hpp"
#include "lssl/random.hpp"
#include "lssl/ridge.hpp"
#include "lssl/solvers.hpp"

namespace lssl {

Graph random_connected_graph(Index n, double extra_edge_prob, std::uint64_t seed, double w_lo, double w_hi) {
  if (n < 1) throw InputError("random graph: need at least one node");
  auto rng = make_rng(seed);
  auto weight = [&] { return w_lo == w_hi ? w_lo : w_lo + (w_hi - w_lo) * uniform_unit(rng); };
  std::vector<Edge> edges;
  std::vector<char> present(static_cast<std::size_t>(n * n), 0);
  // random recursive tree
  for (Index v = 1; v < n; ++v) {
    const auto u = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(v)));
    edges.push_back({u, v, weight()});
    present[static_cast<std::size_t>(u * n + v)] = 1;
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (present[static_cast<std::size_t>(i * n + j)]) continue;
      if (uniform_unit(rng) < extra_edge_prob) edges.push_back({i, j, weight()});
    }
  }
  return Graph(n, std::move(edges));
}

namespace {

struct Outcome {
  bool passed = true;
  double worst = 0.0;
  std::string note;

  void record(double value, double limit) {
    worst = std::max(worst, value);
    if (!(value <= limit)) passed = false;
  }
  void require(bool ok, const std::string& why) {
    if (!ok) {
      passed = false;
      if (note.empty()) note = why;
    }
  }
};

std::string describe(const Outcome& o, const std::string& what) {
  std::ostringstream os;
  os << std::setprecision(3) << what << " = " << o.worst;
  if (!o.note.empty()) os << "; " << o.note;
  return os.str();
}

Eigen::MatrixXd random_labels(Index n, Index k, Rng& rng) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, k);
  for (Index c = 0; c < k; ++c) y(static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n))), c) = 1.0;
  return y;
}

}  // namespace

std::vector<CheckResult> run_property_suite(const VerifyOptions& opt) {
  const Index max_n = std::max<Index>(3, opt.max_nodes);
  const Index forest_n = std::min<Index>(max_n, 7);
  const int count = std::max(1, opt.graphs_per_check);
  auto graph_at = [&](int k, Index cap, std::uint64_t salt) {
    auto rng = make_rng(opt.seed ^ (salt << 32) ^ static_cast<std::uint64_t>(k));
    const Index n = 2 + static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(cap - 1)));
    return random_connected_graph(n, 0.3, rng(), 0.5, 2.0);
  };

  std::vector<std::pair<std::string, std::function<std::string(Outcome&)>>> checks;

  checks.emplace_back("laplacian annihilates constants", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      const Graph g = graph_at(k, max_n, 1);
      o.record((laplacian(g) * Eigen::VectorXd::Ones(g.n_nodes())).cwiseAbs().maxCoeff(), 1e-12);
    }
    const auto lm = bundled_lesmis();
    o.record((laplacian(lm.graph) * Eigen::VectorXd::Ones(lm.graph.n_nodes())).cwiseAbs().maxCoeff(), 1e-12);
    return describe(o, "max |L1|");
  });

  checks.emplace_back("transition matrices are stochastic", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      const Graph g = graph_at(k, max_n, 2);
      const SparseMatrix p = standard_transition(g);
      o.record((p * Eigen::VectorXd::Ones(g.n_nodes()) - Eigen::VectorXd::Ones(g.n_nodes())).cwiseAbs().maxCoeff(),
               1e-12);
      const double tau = max_lazy_tau(g);
      const Eigen::MatrixXd lazy(lazy_transition(g, tau));
      const Eigen::MatrixXd expect = Eigen::MatrixXd::Identity(g.n_nodes(), g.n_nodes()) -
                                     tau * Eigen::MatrixXd(laplacian(g));
      o.record((lazy - expect).cwiseAbs().maxCoeff(), 0.0);
      o.require(lazy.minCoeff() >= -1e-15, "negative lazy transition entry");
    }
    return describe(o, "max deviation");
  });

  checks.emplace_back("proximity axioms of Q_beta", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      const Graph g = graph_at(k, max_n, 3);
      for (double beta : {0.1, 1.0, 10.0}) {
        const Eigen::MatrixXd q = kernel_matrix(g, beta);
        const Index n = g.n_nodes();
        o.record((q.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-10);
        for (Index i = 0; i < n; ++i) {
          for (Index j = 0; j < n; ++j) {
            if (i != j) o.require(q(i, i) > q(i, j), "egocentrism violated");
            for (Index l = 0; l < n; ++l) {
              const double lhs = q(j, i) + q(j, l) - q(i, l);
              o.require(lhs <= q(j, j) + 1e-12, "proximity triangle inequality violated");
              if (i == l && i != j) o.require(lhs < q(j, j), "strict proximity inequality not strict");
            }
          }
        }
      }
    }
    return describe(o, "max |row sum - 1|");
  });

  checks.emplace_back("matrix forest theorem", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      const Graph g = graph_at(k, forest_n, 4);
      for (double beta : {0.5, 1.0, 2.0}) {
        const auto census = enumerate_rooted_forests(g, beta);
        o.record((census.rooted_weights / census.total_weight - kernel_matrix(g, beta)).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
    return describe(o, "max |F_ij/F - q_ij|");
  });

  checks.emplace_back("transitional measure", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      const Graph g = graph_at(k, std::min<Index>(max_n, 10), 5);
      for (double beta : {0.1, 1.0, 10.0}) {
        const auto rep = check_transitional_measure(kernel_matrix(g, beta), g);
        o.record(std::max(rep.max_excess, rep.max_cutpoint_gap), 1e-12);
        o.require(rep.strict_elsewhere, "non-cutpoint triple attains equality");
      }
    }
    return describe(o, "max excess/gap");
  });

  checks.emplace_back("generalized method collapses to RL", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      const Graph g = graph_at(k, max_n, 6);
      auto rng = make_rng(opt.seed + static_cast<std::uint64_t>(k));
      const Eigen::MatrixXd y = random_labels(g.n_nodes(), 2, rng);
      const double tau = 0.5 * max_lazy_tau(g);
      const double mu = 0.7;
      const Eigen::MatrixXd rl = regularized_laplacian_apply(g, 2.0 * tau / mu, y, {SolverKind::dense_cholesky});
      for (double sigma : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
        o.record((generalized_ssl_apply(g, sigma, mu, LazyWeights{tau}, y) - rl).cwiseAbs().maxCoeff(), 1e-10);
      }
    }
    return describe(o, "max deviation");
  });

  checks.emplace_back("cross-solver agreement", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      const Graph g = graph_at(k, std::max<Index>(max_n, 10), 7);
      auto rng = make_rng(opt.seed * 31 + static_cast<std::uint64_t>(k));
      const Eigen::MatrixXd y = random_labels(g.n_nodes(), 3, rng);
      const double beta = std::pow(10.0, -2.0 + 4.0 * uniform_unit(rng));
      const Eigen::MatrixXd ref = regularized_laplacian_apply(g, beta, y, {SolverKind::dense_cholesky});
      SolverSpec cg{SolverKind::conjugate_gradient};
      SolverSpec power{SolverKind::power_iteration, 1e-12, 1000000};
      o.record((regularized_laplacian_apply(g, beta, y, cg) - ref).cwiseAbs().maxCoeff(), 1e-6);
      o.record((regularized_laplacian_apply(g, beta, y, power) - ref).cwiseAbs().maxCoeff(), 1e-6);
    }
    return describe(o, "max deviation");
  });

  checks.emplace_back("heat kernel semigroup", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      const Graph g = graph_at(k, max_n, 8);
      auto rng = make_rng(opt.seed * 17 + static_cast<std::uint64_t>(k));
      const Eigen::MatrixXd y = random_labels(g.n_nodes(), 2, rng);
      for (auto kind : {HeatKind::standard, HeatKind::normalized, HeatKind::pagerank}) {
        const Eigen::MatrixXd once = heat_kernel_apply(g, kind, 1.5, y);
        const Eigen::MatrixXd twice = heat_kernel_apply(g, kind, 1.0, heat_kernel_apply(g, kind, 0.5, y));
        o.record((once - twice).cwiseAbs().maxCoeff(), 1e-8);
      }
    }
    return describe(o, "max deviation");
  });

  checks.emplace_back("forest distance and hub graph", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      const Graph g = graph_at(k, max_n, 9);
      for (double beta : {0.5, 2.0}) {
        const Eigen::MatrixXd rho = adjusted_forest_distance(kernel_matrix(g, beta), beta);
        const Eigen::MatrixXd hub = resistance_distance(hub_augmented_graph(g, beta));
        o.record((rho - hub.topLeftCorner(g.n_nodes(), g.n_nodes())).cwiseAbs().maxCoeff(), 1e-9);
      }
    }
    return describe(o, "max |rho - hub resistance|");
  });

  checks.emplace_back("cutpoint additivity of log distance", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      const Graph g = graph_at(k, std::min<Index>(max_n, 10), 10);
      const Eigen::MatrixXd d = log_forest_distance(kernel_matrix(g, 1.0));
      const Index n = g.n_nodes();
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
          for (Index l = 0; l < n; ++l) {
            if (i == l || j == i || j == l) continue;
            const double slack = d(i, j) + d(j, l) - d(i, l);
            if (every_path_visits(g, i, j, l)) {
              o.record(std::abs(slack), 1e-10);
            } else {
              o.require(slack > 0.0, "additivity on a non-cutpoint triple");
            }
          }
        }
      }
    }
    return describe(o, "max cutpoint slack");
  });

  checks.emplace_back("group inverse identities", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      const Graph g = graph_at(k, max_n, 11);
      const Eigen::MatrixXd l(laplacian(g));
      const Eigen::MatrixXd h = group_inverse(l);
      o.record((h * Eigen::VectorXd::Ones(g.n_nodes())).cwiseAbs().maxCoeff(), 1e-9);
      o.record((l * h * l - l).cwiseAbs().maxCoeff(), 1e-9);
      o.record((h * l * h - h).cwiseAbs().maxCoeff(), 1e-9);
    }
    return describe(o, "max residual");
  });

  checks.emplace_back("ridge estimate equals RL kernel", [&](Outcome& o) {
    for (int k = 0; k < count; ++k) {
      auto rng = make_rng(opt.seed * 7 + static_cast<std::uint64_t>(k));
      ComparisonSet c;
      c.n_items = std::max<Index>(2, max_n);
      for (int m = 0; m < 3 * c.n_items; ++m) {
        const auto i = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(c.n_items)));
        auto j = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(c.n_items - 1)));
        if (j >= i) ++j;
        c.records.push_back({i, j, 2.0 * uniform_unit(rng) - 1.0});
      }
      const double lambda = 0.3;
      const Eigen::MatrixXd x(incidence_matrix(c));
      const Eigen::MatrixXd normal =
          lambda * Eigen::MatrixXd::Identity(c.n_items, c.n_items) + x.transpose() * x;
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Index>(c.records.size()));
      for (std::size_t m = 0; m < c.records.size(); ++m) rhs[static_cast<Index>(m)] = c.records[m].r;
      const Eigen::VectorXd direct = normal.ldlt().solve(x.transpose() * rhs);
      o.record((ridge_estimate(c, lambda).values - direct).cwiseAbs().maxCoeff(), 1e-10);
    }
    return describe(o, "max deviation");
  });

  checks.emplace_back("geometric walk matches kernel row", [&](Outcome& o) {
    const Graph k2(2, {{0, 1, 1.0}});
    const std::int64_t samples = 200000;
    const Eigen::VectorXd emp = monte_carlo_geometric_walk(k2, 0.5, 0.5, 0, samples, opt.seed);
    const Eigen::VectorXd exact = kernel_matrix(k2, 0.5).row(0).transpose();
    o.record(0.5 * (emp - exact).cwiseAbs().sum(), 4.0 * std::sqrt(2.0 / static_cast<double>(samples)));
    return describe(o, "total variation");
  });

  std::vector<CheckResult> results;
  for (auto& [name, fn] : checks) {
    Outcome o;
    CheckResult r{name, false, {}};
    try {
      r.detail = fn(o);
      r.passed = o.passed;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

void print_report(const std::vector<CheckResult>& results, std::ostream& out) {
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << r.name << "  "
        << r.detail << '\n';
  }
  const auto failed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.passed; });
  out << (results.size() - static_cast<std::size_t>(failed)) << '/' << results.size() << " checks passed\n";
}

}  // namespace lssl
