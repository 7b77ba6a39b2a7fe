#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lssl/error.hpp"

namespace lssl {

using Index = Eigen::Index;

/// Compressed sparse rows; used for Laplacians, adjacency and transition matrices.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Edge {
  Index i = 0;
  Index j = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph on nodes 0..n-1.
///
/// Edges are stored once with i < j, sorted, and with duplicates merged by
/// summing weights. Self-loops and non-positive weights are rejected.
/// Connectivity is not enforced here; `load_edge_list` checks it.
class Graph {
 public:
  Graph() = default;
  Graph(Index n_nodes, std::vector<Edge> edges, std::vector<std::string> names = {});

  Index n_nodes() const { return n_nodes_; }
  Index n_edges() const { return static_cast<Index>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Weighted degrees d_i = sum_j a_ij.
  const Eigen::VectorXd& degrees() const { return degrees_; }
  double max_degree() const;

  /// Symmetric adjacency A; nnz(A) == 2 * n_edges().
  const SparseMatrix& adjacency() const { return adjacency_; }

  bool has_names() const { return !names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  /// External name of a node, or its decimal index when the graph is unnamed.
  std::string name_of(Index node) const;
  std::optional<Index> index_of(const std::string& name) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_nodes_ == b.n_nodes_ && a.edges_ == b.edges_ && a.names_ == b.names_;
  }

 private:
  Index n_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Index> name_index_;
  Eigen::VectorXd degrees_;
  SparseMatrix adjacency_;
};

/// Component id per node (ids in order of first node) and component count.
struct Components {
  std::vector<Index> label;
  Index count = 0;

  std::vector<Index> sizes() const;
};

Components connected_components(const Graph& g);
bool is_connected(const Graph& g);

/// Subgraph induced by `nodes`, relabelled 0..nodes.size()-1 in the given order.
Graph induced_subgraph(const Graph& g, const std::vector<Index>& nodes);

class DisconnectedGraphError : public InputError {
 public:
  explicit DisconnectedGraphError(std::vector<Index> component_sizes);
  const std::vector<Index>& component_sizes() const { return sizes_; }

 private:
  std::vector<Index> sizes_;
};

struct LoadOptions {
  /// Accept graphs with more than one connected component.
  bool allow_components = false;
};

/// Reads whitespace separated "i j [w]" lines; '#' starts a comment.
///
/// Node tokens are arbitrary strings, remapped to 0..n-1 in order of first
/// appearance; the original tokens are kept as node names.
Graph load_edge_list(std::istream& in, const LoadOptions& options = {});
Graph load_edge_list_file(const std::string& path, const LoadOptions& options = {});

/// Writes "name name weight" lines such that load_edge_list reproduces `g`.
void write_edge_list(const Graph& g, std::ostream& out);

/// Reads "node class" lines, resolving node tokens through the graph's names.
std::vector<std::pair<Index, int>> load_label_pairs(std::istream& in, const Graph& g);
std::vector<std::pair<Index, int>> load_label_pairs_file(const std::string& path, const Graph& g);

/// L = D - A.
SparseMatrix laplacian(const Graph& g);

/// D^{-1/2} L D^{-1/2}. Throws InputError on an isolated node.
SparseMatrix normalized_laplacian(const Graph& g);

/// P = D^{-1} A, row-stochastic.
SparseMatrix standard_transition(const Graph& g);

/// Largest tau for which I - tau L has a nonnegative diagonal.
double max_lazy_tau(const Graph& g);

/// P = I - tau L; symmetric, row-stochastic, possibly nonzero diagonal.
SparseMatrix lazy_transition(const Graph& g, double tau);

}  // namespace lssl
