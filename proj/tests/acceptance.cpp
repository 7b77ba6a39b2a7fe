// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lssl/classify.hpp"
#include "lssl/experiments.hpp"
#include "lssl/kernels.hpp"
#include "lssl/proximity.hpp"
#include "lssl/random.hpp"
#include "lssl/ridge.hpp"
#include "lssl/verify.hpp"
#include "oracles.hpp"

using namespace lssl;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. forest enumeration equals the kernel on every small weighted graph

Outcome forest_oracle() {
  std::int64_t graphs = 0;
  double worst = 0.0;
  for (Index n = 1; n <= 5; ++n) {
    std::vector<std::pair<Index, Index>> pairs;
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    const std::size_t m = pairs.size();
    for (std::uint32_t subset = 0; subset < (1u << m); ++subset) {
      std::vector<std::size_t> chosen;
      for (std::size_t e = 0; e < m; ++e) {
        if (subset & (1u << e)) chosen.push_back(e);
      }
      // weight pattern: bit b of `heavy` doubles the b-th chosen edge
      for (std::uint32_t heavy = 0; heavy < (1u << chosen.size()); ++heavy) {
        std::vector<Edge> edges;
        for (std::size_t b = 0; b < chosen.size(); ++b) {
          edges.push_back({pairs[chosen[b]].first, pairs[chosen[b]].second, (heavy & (1u << b)) ? 2.0 : 1.0});
        }
        const Graph g(n, edges);
        if (!is_connected(g)) break;  // connectivity does not depend on the weights
        ++graphs;
        for (double beta : {0.5, 1.0, 2.0}) {
          const ForestCensus census = enumerate_rooted_forests(g, beta);
          worst = std::max(worst, max_abs(census.rooted_weights / census.total_weight - kernel_matrix(g, beta)));
        }
      }
    }
  }
  return {worst <= 1e-12, std::to_string(graphs) + " weighted graphs, max |F_ij/F - q_ij| = " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------------------
// 2. proximity axioms

Outcome proximity_axioms() {
  auto rng = make_rng(20);
  double row_sum = 0.0;
  double triangle = 0.0;       // max of q_ji + q_jk - q_ik - q_jj
  double strict_margin = 1.0;  // min of q_jj + q_ii - 2 q_ij for i != j
  double ego_margin = 1.0;     // min of q_ii - q_ij for i != j
  int transitional_graphs = 0;
  int transitional_failures = 0;
  for (int k = 0; k < 50; ++k) {
    const Index n = 2 + static_cast<Index>(uniform_index(rng, 29));
    const Graph g = random_connected_graph(n, 0.15, rng(), 0.5, 2.0);
    for (double beta : {0.1, 1.0, 10.0}) {
      const Eigen::MatrixXd q = kernel_matrix(g, beta);
      row_sum = std::max(row_sum, max_abs(q.rowwise().sum().array() - 1.0));
      for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
          if (i != j) {
            strict_margin = std::min(strict_margin, q(j, j) + q(i, i) - 2.0 * q(i, j));
            ego_margin = std::min(ego_margin, q(i, i) - q(i, j));
          }
          for (Index kk = 0; kk < n; ++kk) triangle = std::max(triangle, q(j, i) + q(j, kk) - q(i, kk) - q(j, j));
        }
      }
      if (n <= 10) {
        ++transitional_graphs;
        if (!check_transitional_measure(q, g).ok()) ++transitional_failures;
      }
    }
  }
  const bool ok = row_sum <= 1e-10 && triangle <= 1e-12 && strict_margin > 0.0 && ego_margin > 0.0 &&
                  transitional_failures == 0 && transitional_graphs > 0;
  std::ostringstream os;
  os << "row sums " << fmt("%.2g", row_sum) << ", triangle excess " << fmt("%.2g", triangle) << ", strict margin "
     << fmt("%.2g", strict_margin) << ", egocentrism margin " << fmt("%.2g", ego_margin) << ", transitional "
     << transitional_graphs - transitional_failures << "/" << transitional_graphs;
  return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// 3. every sigma with W = I - tau L reduces to RL at beta = 2 tau / mu

Outcome sigma_collapse() {
  auto rng = make_rng(30);
  double worst = 0.0;
  int cases = 0;
  for (int k = 0; k < 20; ++k) {
    const Index n = 2 + static_cast<Index>(uniform_index(rng, 29));
    const Graph g = random_connected_graph(n, 0.2, rng(), 0.5, 2.0);
    const double tau = max_lazy_tau(g) * (0.1 + 0.9 * uniform_unit(rng));
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, 2);
    y(0, 0) = 1.0;
    y(n - 1, 1) = 1.0;
    for (double mu : {0.1, 1.0, 10.0}) {
      const Eigen::MatrixXd rl = regularized_laplacian_apply(g, 2.0 * tau / mu, y, {SolverKind::dense_cholesky});
      for (double sigma : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
        worst = std::max(worst, max_abs(generalized_ssl_apply(g, sigma, mu, LazyWeights{tau}, y) - rl));
        ++cases;
      }
    }
  }
  return {worst <= 1e-10, std::to_string(cases) + " cases, max deviation " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------------------
// 4. solvers agree on the bundled data

Outcome cross_solver() {
  const Dataset lm = bundled_lesmis();
  const Eigen::MatrixXd y = build_label_matrix(sample_seeds(lm.truth, lm.graph, UniformSeeding{}, 2, 4), 77, 6);
  double worst = 0.0;
  bool converged = true;
  int max_power_iterations = 0;
  for (double beta : {0.1, 1.0, 10.0}) {
    const Eigen::MatrixXd chol = cholesky_solve(Eigen::MatrixXd(regularized_operator(lm.graph, beta)), y);
    const SolveResult cg = cg_solve(regularized_operator(lm.graph, beta), y, {});
    const SolveResult pw = power_iteration_solve(lm.graph, beta, y, {SolverKind::power_iteration});
    converged = converged && cg.report.converged && pw.report.converged;
    max_power_iterations = std::max(max_power_iterations, pw.report.iterations);
    worst = std::max({worst, max_abs(cg.f - chol), max_abs(pw.f - chol), max_abs(cg.f - pw.f)});
  }
  return {converged && worst <= 1e-6, "max pairwise gap " + fmt("%.3g", worst) + ", power iterations <= " +
                                          std::to_string(max_power_iterations) +
                                          (converged ? "" : ", NOT CONVERGED")};
}

// ---------------------------------------------------------------------------
// 5. limiting cases

double blackwell_error(const Graph& g, double beta) {
  const Index n = g.n_nodes();
  const Eigen::MatrixXd h = group_inverse(Eigen::MatrixXd(laplacian(g)));
  const Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  return max_abs(kernel_matrix(g, beta) - j - h / beta);
}

// Worst relative deviation of d_ij / d_ref from m_ij / m_ref over all pairs.
double ratio_error(const Eigen::MatrixXd& d, const Eigen::MatrixXd& metric) {
  double worst = 0.0;
  const Index n = d.rows();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) worst = std::max(worst, std::abs((d(i, j) / d(0, 1)) / (metric(i, j) / metric(0, 1)) - 1.0));
  }
  return worst;
}

Graph cycle(Index n) {
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1.0});
  return Graph(n, e);
}

Outcome limit_suite() {
  std::ostringstream os;
  bool ok = true;

  // (a) Q_beta = J + H / beta + O(1/beta^2)
  double ratio_lo = 1e300;
  double ratio_hi = 0.0;
  std::vector<Graph> graphs{oracle::path3(), oracle::triangle(), oracle::star3(), bundled_lesmis().graph};
  for (std::uint64_t s = 0; s < 6; ++s) graphs.push_back(random_connected_graph(12, 0.2, 500 + s, 0.5, 2.0));
  for (const Graph& g : graphs) {
    const double r = blackwell_error(g, 1e2) / blackwell_error(g, 2e2);
    ratio_lo = std::min(ratio_lo, r);
    ratio_hi = std::max(ratio_hi, r);
  }
  const bool a = ratio_lo >= 3.0 && ratio_hi <= 5.0;
  os << "(a) error ratio in [" << fmt("%.4f", ratio_lo) << ", " << fmt("%.4f", ratio_hi) << "]";

  // (b) rho^beta -> resistance distance
  double rho_gap = 0.0;
  for (const Graph& g : {oracle::k2(), oracle::path3(), oracle::triangle()}) {
    rho_gap = std::max(rho_gap, max_abs(adjusted_forest_distance(kernel_matrix(g, 1e4), 1e4) - resistance_distance(g)));
  }
  const bool b = rho_gap <= 1e-3;
  os << "; (b) |rho - resistance| " << fmt("%.2g", rho_gap);

  // (c) hub graph identity
  double hub_gap = 0.0;
  auto rng = make_rng(50);
  for (int k = 0; k < 20; ++k) {
    const Index n = 2 + static_cast<Index>(uniform_index(rng, 9));
    const Graph g = random_connected_graph(n, 0.3, rng(), 0.5, 2.0);
    const double beta = std::pow(10.0, -1.0 + 2.0 * uniform_unit(rng));
    const Eigen::MatrixXd rho = adjusted_forest_distance(kernel_matrix(g, beta), beta);
    hub_gap = std::max(hub_gap, max_abs(rho - resistance_distance(hub_augmented_graph(g, beta)).topLeftCorner(n, n)));
  }
  const bool c = hub_gap <= 1e-9;
  os << "; (c) hub identity " << fmt("%.2g", hub_gap);

  // (d) d^beta proportional to shortest-path (small beta) and resistance (large beta) distances.
  // Odd cycles have unique shortest paths, and their resistance and hop metrics are not proportional.
  std::vector<Graph> shapes{cycle(5), cycle(7), Graph(6, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0},
                                                        {4, 0, 1.0}, {0, 5, 1.0}})};
  double sp_err = 0.0;
  double res_err = 0.0;
  for (const Graph& g : shapes) {
    sp_err = std::max(sp_err, ratio_error(log_forest_distance(kernel_matrix(g, 1e-4)), hop_distances(g).cast<double>()));
    res_err = std::max(res_err, ratio_error(log_forest_distance(kernel_matrix(g, 1e4)), resistance_distance(g)));
  }
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Graph g = random_connected_graph(10, 0.3, 700 + s, 0.5, 2.0);
    res_err = std::max(res_err, ratio_error(log_forest_distance(kernel_matrix(g, 1e4)), resistance_distance(g)));
  }
  const bool d = sp_err <= 0.02 && res_err <= 0.02;
  os << "; (d) ratio error shortest-path " << fmt("%.2g", sp_err) << ", resistance " << fmt("%.2g", res_err);

  ok = a && b && c && d;
  return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// 6. Monte-Carlo walk

Outcome monte_carlo() {
  const Eigen::VectorXd k2 = monte_carlo_geometric_walk(oracle::k2(), 0.5, 0.5, 0, 1000000, 6);
  const double k2_tv = 0.5 * (std::abs(k2[0] - 0.75) + std::abs(k2[1] - 0.25));
  bool ok = k2_tv <= 0.005;
  double worst_fraction = 0.0;  // TV / bound
  auto rng = make_rng(60);
  const std::int64_t samples = 200000;
  for (int k = 0; k < 10; ++k) {
    const Index n = 2 + static_cast<Index>(uniform_index(rng, 9));
    const Graph g = random_connected_graph(n, 0.3, rng(), 0.5, 2.0);
    const double tau = max_lazy_tau(g) * (0.2 + 0.8 * uniform_unit(rng));
    const double q = 0.1 + 0.8 * uniform_unit(rng);
    const Index start = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    const Eigen::VectorXd emp = monte_carlo_geometric_walk(g, tau, q, start, samples, rng(), 0);
    const Eigen::VectorXd exact = kernel_matrix(g, tau * (1.0 / q - 1.0)).row(start).transpose();
    const double tv = 0.5 * (emp - exact).cwiseAbs().sum();
    const double bound = 4.0 * std::sqrt(static_cast<double>(n) / static_cast<double>(samples));
    worst_fraction = std::max(worst_fraction, tv / bound);
  }
  ok = ok && worst_fraction <= 1.0;
  return {ok, "K2 TV " + fmt("%.2g", k2_tv) + "; random graphs worst TV at " + fmt("%.2f", worst_fraction) +
                  " of the 4 sqrt(N/n) bound"};
}

// ---------------------------------------------------------------------------
// 7. qualitative curves on the bundled data

std::vector<CurvePoint> curve(const Dataset& data, SweptMethod method) {
  SweepConfig cfg;
  cfg.method = method;
  cfg.threads = 1;
  return summarize(run_sweep(data, cfg)).at(std::string(method_tag(method)));
}

double curve_max(const std::vector<CurvePoint>& c) {
  double m = 0.0;
  for (const auto& p : c) m = std::max(m, p.mean);
  return m;
}

Outcome lesmis_curves() {
  const Dataset lm = bundled_lesmis();
  std::ostringstream os;
  const bool shape = lm.graph.n_nodes() == 77 && lm.graph.adjacency().nonZeros() == 508 &&
                     lm.truth.class_sizes() == std::vector<Index>{17, 10, 18, 10, 12, 10};
  os << (shape ? "data ok" : "DATA MISMATCH");

  const auto rl = curve(lm, SweptMethod::regularized_laplacian);
  const double rl_max = curve_max(rl);
  int run = 0;
  int longest = 0;
  for (const auto& p : rl) {
    run = p.mean >= rl_max - 0.05 ? run + 1 : 0;
    longest = std::max(longest, run);
  }
  const bool plateau = longest >= 8;
  os << "; RL max " << fmt("%.3f", rl_max) << ", plateau " << longest << "/" << rl.size() << " points";

  bool degrade = true;
  std::vector<CurvePoint> heat_standard;
  for (SweptMethod m : {SweptMethod::heat_standard, SweptMethod::heat_normalized, SweptMethod::heat_pagerank}) {
    auto c = curve(lm, m);
    const double drop = curve_max(c) - c.back().mean;
    degrade = degrade && c.back().param == 1e3 && drop >= 0.10;
    os << "; " << method_tag(m) << " drop " << fmt("%.3f", drop);
    if (m == SweptMethod::heat_standard) heat_standard = std::move(c);
  }

  const double small_gap = std::abs(rl.front().mean - heat_standard.front().mean);
  const bool coincide = rl.front().param == 1e-3 && heat_standard.front().param == 1e-3 && small_gap <= 0.01;
  os << "; |RL - heat| at 1e-3 " << fmt("%.4f", small_gap);
  return {shape && plateau && degrade && coincide, os.str()};
}

// ---------------------------------------------------------------------------
// 8. ridge equals RL on beta X^T r

Outcome ridge_equivalence() {
  auto rng = make_rng(80);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    ComparisonSet c;
    c.n_items = 2 + static_cast<Index>(uniform_index(rng, 19));
    const int records = 1 + static_cast<int>(uniform_index(rng, 100));
    for (int r = 0; r < records; ++r) {
      const auto i = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(c.n_items)));
      auto j = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(c.n_items - 1)));
      if (j >= i) ++j;
      c.records.push_back({i, j, 6.0 * uniform_unit(rng) - 3.0});
    }
    const double lambda = std::pow(10.0, -1.0 + 2.0 * uniform_unit(rng));
    const double beta = 1.0 / lambda;
    const Eigen::MatrixXd x(incidence_matrix(c));
    Eigen::VectorXd r(static_cast<Index>(c.records.size()));
    for (std::size_t t = 0; t < c.records.size(); ++t) r[static_cast<Index>(t)] = c.records[t].r;
    SolverSpec exact{SolverKind::dense_cholesky};
    const Eigen::VectorXd rl = regularized_laplacian_apply(comparison_graph(c), beta, beta * x.transpose() * r, exact);
    worst = std::max(worst, max_abs(ridge_estimate(c, lambda).values - rl));
  }
  return {worst <= 1e-10, "20 comparison sets, max deviation " + fmt("%.3g", worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;  // 0 = no runtime bound
  };
  const std::vector<Criterion> criteria{
      {1, "forest-oracle equivalence", forest_oracle, 60.0},
      {2, "proximity axioms", proximity_axioms, 60.0},
      {3, "sigma collapse", sigma_collapse, 0.0},
      {4, "cross-solver agreement", cross_solver, 0.0},
      {5, "limit suite", limit_suite, 0.0},
      {6, "monte-carlo walk", monte_carlo, 0.0},
      {7, "les miserables curves", lesmis_curves, 600.0},
      {8, "ridge equivalence", ridge_equivalence, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
      out.passed = false;
      out.detail += " (over the " + fmt("%.0f", c.budget_seconds) + " s budget)";
    }
    if (!out.passed) ++failures;
    std::printf("%s  %d  %-26s %7.2fs  %s\n", out.passed ? "PASS" : "FAIL", c.id, c.name, seconds,
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
