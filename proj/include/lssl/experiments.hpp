#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lssl/classify.hpp"
#include "lssl/graph.hpp"
#include "lssl/kernels.hpp"

namespace lssl {

struct Dataset {
  Graph graph;
  GroundTruth truth;
};

/// Les Miserables co-appearance network with its 6-cluster ground truth
/// (Valjean, Myriel, Gavroche, Cosette, Thenardier, Fantine). Verifies the
/// embedded data checksum.
Dataset bundled_lesmis();

/// Loads an edge list and a complete "node class" file.
Dataset load_dataset(const std::string& edges_path, const std::string& labels_path);

/// Synthetic stand-in for the Wikipedia mathematics graph: three planted
/// classes of sizes 106, 368 and 435, connected, unweighted.
Dataset synthetic_wiki_fixture(std::uint64_t rng_seed = 2010);

/// Which family is swept and what the grid value means.
enum class SweptMethod {
  regularized_laplacian,  // beta
  heat_standard,          // t
  heat_normalized,        // t
  heat_pagerank,          // t
  pagerank,               // mu, generalized method with sigma = 0 and W = A
  generalized,            // mu, with the configured sigma and weights
};

std::string_view method_tag(SweptMethod m);
SweptMethod parse_method(std::string_view tag);

/// `count` values log-spaced over [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count);

struct SweepConfig {
  /// Empty paths select the bundled Les Miserables data.
  std::string edges_path;
  std::string labels_path;

  SweptMethod method = SweptMethod::regularized_laplacian;
  double sigma = 0.0;
  WeightChoice weights = AdjacencyWeights{};
  std::vector<double> grid = log_grid(1e-3, 1e3, 25);

  SeedStrategy strategy = UniformSeeding{};
  Index per_class = 2;
  int n_trials = 100;
  std::uint64_t rng_seed = 1;

  SolverSpec solver;
  double heat_tol = 1e-10;
  bool include_seeds = false;
  /// Grid points evaluated concurrently; 0 = hardware concurrency.
  unsigned threads = 0;

  void validate() const;
  /// Kernel for one grid value.
  KernelSpec kernel_at(double value) const;
};

/// Parses "key: value" (or "key = value") lines; '#' starts a comment.
///
/// Keys: edges, labels, method, sigma, weights (adjacency | lazy:TAU), grid
/// (logspace:LO:HI:N or comma list), strategy (uniform | high-degree:POOL),
/// per_class, trials, seed, solver, tol, heat_tol, include_seeds, threads.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

struct SweepRow {
  std::string method;
  double param = 0.0;
  int trial = 0;
  double precision = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Seeds for trial k come from sample_seeds(..., rng_seed ^ k). All trials
/// share one kernel application per grid value (their label matrices are
/// stacked column-wise); rows come back ordered by (param, trial).
SweepResult run_sweep(const Dataset& data, const SweepConfig& cfg);
SweepResult run_sweep(const SweepConfig& cfg);

/// Header "method,param,trial,precision"; numbers with 6 significant digits.
/// Rows are grouped by method in first-appearance order, then (param, trial).
void write_csv(const SweepResult& result, std::ostream& out);
SweepResult read_csv(std::istream& in);

struct CurvePoint {
  double param = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  int trials = 0;
};

/// Mean and sample standard deviation of precision per parameter value, per method.
std::map<std::string, std::vector<CurvePoint>> summarize(const SweepResult& result);

}  // namespace lssl
