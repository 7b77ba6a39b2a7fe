#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lssl/graph.hpp"

namespace lssl {

/// Random connected graph: a random spanning tree plus each remaining pair
/// with probability `extra_edge_prob`. Weights are uniform in [w_lo, w_hi],
/// or all 1 when w_lo == w_hi == 1.
Graph random_connected_graph(Index n, double extra_edge_prob, std::uint64_t seed, double w_lo = 1.0,
                             double w_hi = 1.0);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Upper bound on random graph size; enumeration checks cap themselves lower.
  Index max_nodes = 10;
  int graphs_per_check = 10;
  std::uint64_t seed = 7;
};

/// Runs the library's property checks on random graphs and the bundled data.
std::vector<CheckResult> run_property_suite(const VerifyOptions& options);

/// Fixed-width PASS/FAIL table.
void print_report(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace lssl
