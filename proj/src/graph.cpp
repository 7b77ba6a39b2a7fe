#include "lssl/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace lssl {

namespace {

std::string format_sizes(const std::vector<Index>& sizes) {
  std::ostringstream os;
  for (std::size_t k = 0; k < sizes.size(); ++k) os << (k ? ", " : "") << sizes[k];
  return os.str();
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(std::move(tok));
  return out;
}

double parse_double(const std::string& tok, std::size_t line_no) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw InputError("line " + std::to_string(line_no) + ": cannot parse number '" + tok + "'");
  }
  return value;
}

}  // namespace

Graph::Graph(Index n_nodes, std::vector<Edge> edges, std::vector<std::string> names)
    : n_nodes_(n_nodes), names_(std::move(names)) {
  if (n_nodes < 0) throw InputError("graph: negative node count");
  if (!names_.empty() && static_cast<Index>(names_.size()) != n_nodes) {
    throw InputError("graph: name list size does not match node count");
  }
  for (auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n_nodes || e.j >= n_nodes) {
      throw InputError("graph: edge endpoint out of range");
    }
    if (e.i == e.j) throw InputError("graph: self-loop at node " + std::to_string(e.i));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw InputError("graph: non-positive or non-finite weight on edge (" + std::to_string(e.i) +
                       ", " + std::to_string(e.j) + ")");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  // stable so duplicate weights are summed in input order
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (const auto& e : edges) {
    if (!edges_.empty() && edges_.back().i == e.i && edges_.back().j == e.j) {
      edges_.back().w += e.w;
    } else {
      edges_.push_back(e);
    }
  }

  for (Index k = 0; k < static_cast<Index>(names_.size()); ++k) {
    if (!name_index_.emplace(names_[k], k).second) {
      throw InputError("graph: duplicate node name '" + names_[k] + "'");
    }
  }

  degrees_ = Eigen::VectorXd::Zero(n_nodes_);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * edges_.size());
  for (const auto& e : edges_) {
    degrees_[e.i] += e.w;
    degrees_[e.j] += e.w;
    trips.emplace_back(e.i, e.j, e.w);
    trips.emplace_back(e.j, e.i, e.w);
  }
  adjacency_.resize(n_nodes_, n_nodes_);
  adjacency_.setFromTriplets(trips.begin(), trips.end());
  adjacency_.makeCompressed();
}

double Graph::max_degree() const { return n_nodes_ == 0 ? 0.0 : degrees_.maxCoeff(); }

std::string Graph::name_of(Index node) const {
  return names_.empty() ? std::to_string(node) : names_.at(static_cast<std::size_t>(node));
}

std::optional<Index> Graph::index_of(const std::string& name) const {
  if (names_.empty()) {
    Index value = 0;
    auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
    if (ec != std::errc() || ptr != name.data() + name.size() || value < 0 || value >= n_nodes_) {
      return std::nullopt;
    }
    return value;
  }
  auto it = name_index_.find(name);
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Index> Components::sizes() const {
  std::vector<Index> out(static_cast<std::size_t>(count), 0);
  for (Index c : label) ++out[static_cast<std::size_t>(c)];
  return out;
}

Components connected_components(const Graph& g) {
  const Index n = g.n_nodes();
  Components comp;
  comp.label.assign(static_cast<std::size_t>(n), -1);
  const auto& adj = g.adjacency();
  std::vector<Index> stack;
  for (Index s = 0; s < n; ++s) {
    if (comp.label[s] >= 0) continue;
    comp.label[s] = comp.count;
    stack.push_back(s);
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (SparseMatrix::InnerIterator it(adj, u); it; ++it) {
        if (comp.label[it.col()] < 0) {
          comp.label[it.col()] = comp.count;
          stack.push_back(it.col());
        }
      }
    }
    ++comp.count;
  }
  return comp;
}

bool is_connected(const Graph& g) { return connected_components(g).count <= 1; }

Graph induced_subgraph(const Graph& g, const std::vector<Index>& nodes) {
  std::vector<Index> remap(static_cast<std::size_t>(g.n_nodes()), -1);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    remap[nodes[k]] = static_cast<Index>(k);
    if (g.has_names()) names.push_back(g.name_of(nodes[k]));
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (remap[e.i] >= 0 && remap[e.j] >= 0) edges.push_back({remap[e.i], remap[e.j], e.w});
  }
  return Graph(static_cast<Index>(nodes.size()), std::move(edges), std::move(names));
}

DisconnectedGraphError::DisconnectedGraphError(std::vector<Index> component_sizes)
    : InputError("graph is disconnected; component sizes: " + format_sizes(component_sizes)),
      sizes_(std::move(component_sizes)) {}

Graph load_edge_list(std::istream& in, const LoadOptions& options) {
  std::unordered_map<std::string, Index> ids;
  std::vector<std::string> names;
  std::vector<Edge> edges;
  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = ids.emplace(tok, static_cast<Index>(names.size()));
    if (inserted) names.push_back(tok);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(strip_comment(line));
    if (tokens.empty()) continue;
    if (tokens.size() < 2 || tokens.size() > 3) {
      throw InputError("line " + std::to_string(line_no) + ": expected 'i j [w]'");
    }
    const double w = tokens.size() == 3 ? parse_double(tokens[2], line_no) : 1.0;
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InputError("line " + std::to_string(line_no) + ": non-positive weight " + tokens[2]);
    }
    if (tokens[0] == tokens[1]) {
      throw InputError("line " + std::to_string(line_no) + ": self-loop on node " + tokens[0]);
    }
    const Index i = intern(tokens[0]);
    const Index j = intern(tokens[1]);
    edges.push_back({i, j, w});
  }
  if (in.bad()) throw InputError("edge list: read failure");

  const auto n = static_cast<Index>(names.size());
  Graph g(n, std::move(edges), std::move(names));
  if (!options.allow_components) {
    const auto comp = connected_components(g);
    if (comp.count > 1) throw DisconnectedGraphError(comp.sizes());
  }
  return g;
}

Graph load_edge_list_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list '" + path + "'");
  return load_edge_list(in, options);
}

// Lines are ordered so that nodes first appear in index order, which makes
// load_edge_list(write_edge_list(g)) reproduce g whenever g was itself loaded.
// Node v is introduced by an edge to its smallest earlier neighbour, or
// together with v + 1 when it has none.
void write_edge_list(const Graph& g, std::ostream& out) {
  const auto& edges = g.edges();
  const auto find_edge = [&](Index a, Index b) -> std::ptrdiff_t {
    const Edge key{std::min(a, b), std::max(a, b), 0.0};
    const auto it = std::lower_bound(edges.begin(), edges.end(), key, [](const Edge& x, const Edge& y) {
      return x.i != y.i ? x.i < y.i : x.j < y.j;
    });
    return it != edges.end() && it->i == key.i && it->j == key.j ? it - edges.begin() : -1;
  };

  std::vector<char> seen(static_cast<std::size_t>(g.n_nodes()), 0);
  std::vector<char> written(edges.size(), 0);
  std::vector<std::size_t> order;
  const auto& adj = g.adjacency();
  for (Index v = 0; v < g.n_nodes(); ++v) {
    if (seen[static_cast<std::size_t>(v)]) continue;
    Index earliest = v;
    for (SparseMatrix::InnerIterator it(adj, v); it; ++it) earliest = std::min(earliest, it.col());
    std::ptrdiff_t e = -1;
    if (earliest < v) {
      e = find_edge(earliest, v);
    } else if (v + 1 < g.n_nodes()) {
      e = find_edge(v, v + 1);
    }
    if (e < 0) continue;
    written[static_cast<std::size_t>(e)] = 1;
    order.push_back(static_cast<std::size_t>(e));
    seen[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].i)] = 1;
    seen[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].j)] = 1;
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!written[e]) order.push_back(e);
  }

  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t e : order) {
    const Edge& edge = edges[e];
    out << g.name_of(edge.i) << ' ' << g.name_of(edge.j) << ' ' << edge.w << '\n';
  }
  out.precision(old_precision);
}

std::vector<std::pair<Index, int>> load_label_pairs(std::istream& in, const Graph& g) {
  std::vector<std::pair<Index, int>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(strip_comment(line));
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw InputError("labels line " + std::to_string(line_no) + ": expected 'node class'");
    }
    const auto node = g.index_of(tokens[0]);
    if (!node) {
      throw InputError("labels line " + std::to_string(line_no) + ": unknown node '" + tokens[0] + "'");
    }
    int cls = -1;
    auto [ptr, ec] = std::from_chars(tokens[1].data(), tokens[1].data() + tokens[1].size(), cls);
    if (ec != std::errc() || ptr != tokens[1].data() + tokens[1].size() || cls < 0) {
      throw InputError("labels line " + std::to_string(line_no) + ": bad class index '" + tokens[1] + "'");
    }
    out.emplace_back(*node, cls);
  }
  return out;
}

std::vector<std::pair<Index, int>> load_label_pairs_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open label file '" + path + "'");
  return load_label_pairs(in, g);
}

SparseMatrix laplacian(const Graph& g) {
  const Index n = g.n_nodes();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * g.edges().size() + static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) {
    trips.emplace_back(e.i, e.j, -e.w);
    trips.emplace_back(e.j, e.i, -e.w);
  }
  for (Index i = 0; i < n; ++i) trips.emplace_back(i, i, g.degrees()[i]);
  SparseMatrix l(n, n);
  l.setFromTriplets(trips.begin(), trips.end());
  l.makeCompressed();
  return l;
}

SparseMatrix normalized_laplacian(const Graph& g) {
  const Index n = g.n_nodes();
  const auto& d = g.degrees();
  for (Index i = 0; i < n; ++i) {
    if (!(d[i] > 0.0)) throw InputError("normalized Laplacian: node " + g.name_of(i) + " is isolated");
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& e : g.edges()) {
    const double v = -e.w / std::sqrt(d[e.i] * d[e.j]);
    trips.emplace_back(e.i, e.j, v);
    trips.emplace_back(e.j, e.i, v);
  }
  for (Index i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
  SparseMatrix l(n, n);
  l.setFromTriplets(trips.begin(), trips.end());
  l.makeCompressed();
  return l;
}

SparseMatrix standard_transition(const Graph& g) {
  const auto& d = g.degrees();
  for (Index i = 0; i < g.n_nodes(); ++i) {
    if (!(d[i] > 0.0)) throw InputError("transition matrix: node " + g.name_of(i) + " is isolated");
  }
  SparseMatrix p = g.adjacency();
  for (Index i = 0; i < p.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(p, i); it; ++it) it.valueRef() /= d[i];
  }
  return p;
}

double max_lazy_tau(const Graph& g) {
  const double dmax = g.max_degree();
  return dmax > 0.0 ? 1.0 / dmax : std::numeric_limits<double>::infinity();
}

SparseMatrix lazy_transition(const Graph& g, double tau) {
  if (!(tau > 0.0)) throw InputError("lazy transition: tau must be positive");
  if (tau * g.max_degree() > 1.0 + 1e-12) {
    std::ostringstream os;
    os << std::setprecision(17) << "lazy transition: tau = " << tau
       << " exceeds the maximal admissible value " << max_lazy_tau(g);
    throw InputError(os.str());
  }
  SparseMatrix identity(g.n_nodes(), g.n_nodes());
  identity.setIdentity();
  SparseMatrix p = identity - tau * laplacian(g);
  p.makeCompressed();
  return p;
}

}  // namespace lssl
