#include "lssl/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "lssl/parallel.hpp"
#include "lssl/random.hpp"
#include "lssl/solvers.hpp"

namespace lssl {

Eigen::MatrixXd resistance_distance(const Graph& g) {
  if (g.n_nodes() > kDenseLimit) throw InputError("resistance distance: graph exceeds the dense size guard");
  if (!is_connected(g)) throw InputError("resistance distance: graph is disconnected");
  const Eigen::MatrixXd h = group_inverse(Eigen::MatrixXd(laplacian(g)));
  const Eigen::VectorXd diag = h.diagonal();
  Eigen::MatrixXd r = diag.replicate(1, h.cols()) + diag.transpose().replicate(h.rows(), 1) - 2.0 * h;
  r.diagonal().setZero();
  return r;
}

Graph hub_augmented_graph(const Graph& g, double beta) {
  if (!(beta > 0.0)) throw InputError("hub graph: beta must be positive");
  const Index n = g.n_nodes();
  std::vector<Edge> edges = g.edges();
  for (Index i = 0; i < n; ++i) edges.push_back({i, n, 1.0 / beta});
  std::vector<std::string> names;
  if (g.has_names()) {
    names = g.names();
    std::string hub = "hub";
    while (g.index_of(hub)) hub += "_";
    names.push_back(hub);
  }
  return Graph(n + 1, std::move(edges), std::move(names));
}

Eigen::MatrixXi hop_distances(const Graph& g) {
  const Index n = g.n_nodes();
  Eigen::MatrixXi dist = Eigen::MatrixXi::Constant(n, n, -1);
  const auto& adj = g.adjacency();
  std::deque<Index> queue;
  for (Index s = 0; s < n; ++s) {
    dist(s, s) = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const Index u = queue.front();
      queue.pop_front();
      for (SparseMatrix::InnerIterator it(adj, u); it; ++it) {
        if (dist(s, it.col()) < 0) {
          dist(s, it.col()) = dist(s, u) + 1;
          queue.push_back(it.col());
        }
      }
    }
  }
  return dist;
}

bool every_path_visits(const Graph& g, Index i, Index j, Index k) {
  if (j == i || j == k) return true;
  if (i == k) return false;
  const auto& adj = g.adjacency();
  std::vector<char> seen(static_cast<std::size_t>(g.n_nodes()), 0);
  seen[static_cast<std::size_t>(i)] = 1;
  seen[static_cast<std::size_t>(j)] = 1;
  std::vector<Index> stack{i};
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (SparseMatrix::InnerIterator it(adj, u); it; ++it) {
      const Index v = it.col();
      if (v == k) return false;
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
    }
  }
  return true;
}

namespace {

// Union-find with undo log, for backtracking over edge subsets.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(Index n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index x) const {
    while (parent_[static_cast<std::size_t>(x)] != x) x = parent_[static_cast<std::size_t>(x)];
    return x;
  }

  Index size_of_root(Index r) const { return size_[static_cast<std::size_t>(r)]; }

  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    history_.push_back(b);
    return true;
  }

  void undo() {
    const Index b = history_.back();
    history_.pop_back();
    const Index a = parent_[static_cast<std::size_t>(b)];
    size_[static_cast<std::size_t>(a)] -= size_[static_cast<std::size_t>(b)];
    parent_[static_cast<std::size_t>(b)] = b;
  }

 private:
  std::vector<Index> parent_;
  std::vector<Index> size_;
  std::vector<Index> history_;
};

class ForestEnumerator {
 public:
  ForestEnumerator(const Graph& g, double beta)
      : n_(g.n_nodes()), edges_(g.edges()), beta_(beta), uf_(g.n_nodes()), root_(static_cast<std::size_t>(n_)) {
    census_.rooted_weights = Eigen::MatrixXd::Zero(n_, n_);
  }

  ForestCensus run() {
    recurse(0, 1.0);
    return std::move(census_);
  }

 private:
  void recurse(std::size_t e, double weight) {
    if (e == edges_.size()) {
      account(weight);
      return;
    }
    recurse(e + 1, weight);
    const auto& edge = edges_[e];
    if (uf_.unite(edge.i, edge.j)) {
      recurse(e + 1, weight * beta_ * edge.w);
      uf_.undo();
    }
  }

  // A forest with trees T_1..T_c has prod |T_r| rootings of equal weight.
  // Node i is rooted at a fixed j in its own tree in prod_{r != tree(i)} |T_r| of them.
  void account(double weight) {
    double rootings = 1.0;
    for (Index v = 0; v < n_; ++v) {
      root_[static_cast<std::size_t>(v)] = uf_.find(v);
      if (root_[static_cast<std::size_t>(v)] == v) rootings *= static_cast<double>(uf_.size_of_root(v));
    }
    ++census_.forest_count;
    census_.total_weight += weight * rootings;
    for (Index i = 0; i < n_; ++i) {
      const Index r = root_[static_cast<std::size_t>(i)];
      const double share = weight * rootings / static_cast<double>(uf_.size_of_root(r));
      for (Index j = 0; j < n_; ++j) {
        if (root_[static_cast<std::size_t>(j)] == r) census_.rooted_weights(i, j) += share;
      }
    }
  }

  Index n_;
  std::vector<Edge> edges_;
  double beta_;
  RollbackUnionFind uf_;
  std::vector<Index> root_;
  ForestCensus census_;
};

}  // namespace

ForestCensus enumerate_rooted_forests(const Graph& g, double beta) {
  if (!(beta > 0.0)) throw InputError("forest enumeration: beta must be positive");
  if (g.n_nodes() > kForestEnumerationLimit) {
    throw InputError("forest enumeration: at most " + std::to_string(kForestEnumerationLimit) + " nodes supported");
  }
  return ForestEnumerator(g, beta).run();
}

Eigen::VectorXd monte_carlo_geometric_walk(const Graph& g, double tau, double q, Index start,
                                           std::int64_t n_samples, std::uint64_t rng_seed, unsigned threads) {
  if (!(q > 0.0 && q < 1.0)) throw InputError("geometric walk: q must lie in (0, 1)");
  if (start < 0 || start >= g.n_nodes()) throw InputError("geometric walk: start node out of range");
  if (n_samples < 1) throw InputError("geometric walk: need at least one sample");
  const SparseMatrix p = lazy_transition(g, tau);
  const Index n = g.n_nodes();

  // cumulative transition rows
  std::vector<std::vector<Index>> targets(static_cast<std::size_t>(n));
  std::vector<std::vector<double>> cumulative(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (SparseMatrix::InnerIterator it(p, i); it; ++it) {
      acc += std::max(0.0, it.value());
      targets[static_cast<std::size_t>(i)].push_back(it.col());
      cumulative[static_cast<std::size_t>(i)].push_back(acc);
    }
  }

  const double log_fail = std::log1p(-q);
  constexpr std::int64_t kChunks = 64;
  std::vector<Eigen::VectorXd> counts(kChunks, Eigen::VectorXd::Zero(n));
  parallel_for(kChunks, threads, [&](std::ptrdiff_t c) {
    const std::int64_t begin = n_samples * c / kChunks;
    const std::int64_t end = n_samples * (c + 1) / kChunks;
    auto rng = make_rng(rng_seed ^ mix_seed(static_cast<std::uint64_t>(c)));
    auto& local = counts[static_cast<std::size_t>(c)];
    for (std::int64_t s = begin; s < end; ++s) {
      // number of failures before the first success
      const double u = 1.0 - uniform_unit(rng);
      const auto steps = static_cast<std::int64_t>(std::floor(std::log(u) / log_fail));
      Index state = start;
      for (std::int64_t k = 0; k < steps; ++k) {
        const auto& cum = cumulative[static_cast<std::size_t>(state)];
        const double x = uniform_unit(rng) * cum.back();
        const auto pos = std::upper_bound(cum.begin(), cum.end(), x) - cum.begin();
        state = targets[static_cast<std::size_t>(state)][static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(pos, static_cast<std::ptrdiff_t>(cum.size()) - 1))];
      }
      local[state] += 1.0;
    }
  });
  Eigen::VectorXd total = Eigen::VectorXd::Zero(n);
  for (const auto& c : counts) total += c;
  return total / static_cast<double>(n_samples);
}

TransitionalReport check_transitional_measure(const Eigen::MatrixXd& q, const Graph& g, double tol) {
  const Index n = g.n_nodes();
  if (q.rows() != n || q.cols() != n) throw InputError("transitional check: kernel size does not match graph");
  TransitionalReport rep;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  rep.min_strict_gap = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index k = 0; k < n; ++k) {
        const double lhs = q(i, j) * q(j, k);
        const double rhs = q(i, k) * q(j, j);
        rep.max_excess = std::max(rep.max_excess, lhs - rhs);
        if (every_path_visits(g, i, j, k)) {
          ++rep.cutpoint_triples;
          rep.max_cutpoint_gap = std::max(rep.max_cutpoint_gap, std::abs(lhs - rhs));
        } else {
          ++rep.strict_triples;
          rep.min_strict_gap = std::min(rep.min_strict_gap, rhs - lhs);
        }
      }
    }
  }
  rep.inequality_holds = rep.max_excess <= tol;
  rep.equality_on_cutpoints = rep.max_cutpoint_gap <= tol;
  rep.strict_elsewhere = rep.strict_triples == 0 || rep.min_strict_gap > 0.0;
  return rep;
}

}  // namespace lssl
