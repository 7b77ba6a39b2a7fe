#include "lssl/classify.hpp"

#include <algorithm>
#include <numeric>

#include "lssl/random.hpp"

namespace lssl {

GroundTruth::GroundTruth(std::vector<int> assignment, int n_classes)
    : assignment_(std::move(assignment)), n_classes_(n_classes) {
  if (n_classes_ < 1) throw InputError("ground truth: need at least one class");
  std::vector<Index> sizes(static_cast<std::size_t>(n_classes_), 0);
  for (int c : assignment_) {
    if (c < 0 || c >= n_classes_) throw InputError("ground truth: class index out of range");
    ++sizes[static_cast<std::size_t>(c)];
  }
  for (int k = 0; k < n_classes_; ++k) {
    if (sizes[static_cast<std::size_t>(k)] == 0) {
      throw InputError("ground truth: class " + std::to_string(k) + " is empty");
    }
  }
}

GroundTruth::GroundTruth(std::vector<int> assignment)
    : GroundTruth(assignment, assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1) {}

std::vector<Index> GroundTruth::members(int cls) const {
  std::vector<Index> out;
  for (Index i = 0; i < n_nodes(); ++i) {
    if (assignment_[static_cast<std::size_t>(i)] == cls) out.push_back(i);
  }
  return out;
}

std::vector<Index> GroundTruth::class_sizes() const {
  std::vector<Index> sizes(static_cast<std::size_t>(n_classes_), 0);
  for (int c : assignment_) ++sizes[static_cast<std::size_t>(c)];
  return sizes;
}

GroundTruth ground_truth_from_pairs(const std::vector<std::pair<Index, int>>& pairs, Index n_nodes) {
  std::vector<int> assignment(static_cast<std::size_t>(n_nodes), -1);
  for (const auto& [node, cls] : pairs) {
    auto& slot = assignment[static_cast<std::size_t>(node)];
    if (slot >= 0 && slot != cls) {
      throw InputError("ground truth: node " + std::to_string(node) + " has two classes");
    }
    slot = cls;
  }
  for (Index i = 0; i < n_nodes; ++i) {
    if (assignment[static_cast<std::size_t>(i)] < 0) {
      throw InputError("ground truth: node " + std::to_string(i) + " has no class");
    }
  }
  return GroundTruth(std::move(assignment));
}

Eigen::MatrixXd build_label_matrix(const SeedSet& seeds, Index n_nodes, int n_classes) {
  if (n_classes < 1) throw InputError("label matrix: need at least one class");
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n_nodes, n_classes);
  std::vector<int> owner(static_cast<std::size_t>(n_nodes), -1);
  for (const auto& s : seeds) {
    if (s.node < 0 || s.node >= n_nodes) throw InputError("label matrix: seed node out of range");
    if (s.cls < 0 || s.cls >= n_classes) throw InputError("label matrix: seed class out of range");
    auto& o = owner[static_cast<std::size_t>(s.node)];
    if (o >= 0 && o != s.cls) {
      throw InputError("label matrix: node " + std::to_string(s.node) + " labelled with classes " +
                       std::to_string(o) + " and " + std::to_string(s.cls));
    }
    o = s.cls;
    y(s.node, s.cls) = 1.0;
  }
  for (int k = 0; k < n_classes; ++k) {
    if (y.col(k).sum() == 0.0) throw InputError("label matrix: class " + std::to_string(k) + " has no seeds");
  }
  return y;
}

std::vector<int> classify(const Eigen::MatrixXd& f) {
  std::vector<int> out(static_cast<std::size_t>(f.rows()), 0);
  for (Index i = 0; i < f.rows(); ++i) {
    int best = 0;
    for (Index k = 1; k < f.cols(); ++k) {
      if (f(i, k) > f(i, best)) best = static_cast<int>(k);
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

double precision(const std::vector<int>& predicted, const GroundTruth& truth, const SeedSet& seeds,
                 bool include_seeds) {
  if (static_cast<Index>(predicted.size()) != truth.n_nodes()) {
    throw InputError("precision: prediction does not cover all nodes");
  }
  std::vector<char> skip(predicted.size(), 0);
  if (!include_seeds) {
    for (const auto& s : seeds) skip[static_cast<std::size_t>(s.node)] = 1;
  }
  Index total = 0;
  Index correct = 0;
  for (Index i = 0; i < truth.n_nodes(); ++i) {
    if (skip[static_cast<std::size_t>(i)]) continue;
    ++total;
    if (predicted[static_cast<std::size_t>(i)] == truth[i]) ++correct;
  }
  return total == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(total);
}

SeedSet sample_seeds(const GroundTruth& truth, const Graph& g, const SeedStrategy& strategy, Index per_class,
                     std::uint64_t rng_seed) {
  if (truth.n_nodes() != g.n_nodes()) throw InputError("sample_seeds: ground truth does not match graph");
  if (per_class < 1) throw InputError("sample_seeds: per_class must be at least 1");
  const auto* high = std::get_if<HighDegreeSeeding>(&strategy);
  if (high && per_class > high->pool_size) {
    throw InputError("sample_seeds: per_class exceeds the high-degree pool size");
  }

  auto rng = make_rng(rng_seed);
  SeedSet seeds;
  for (int k = 0; k < truth.n_classes(); ++k) {
    auto pool = truth.members(k);
    if (static_cast<Index>(pool.size()) < per_class) {
      throw InputError("sample_seeds: class " + std::to_string(k) + " has only " + std::to_string(pool.size()) +
                       " nodes, " + std::to_string(per_class) + " seeds requested");
    }
    if (high) {
      const auto& d = g.degrees();
      std::stable_sort(pool.begin(), pool.end(), [&](Index a, Index b) { return d[a] > d[b]; });
      pool.resize(static_cast<std::size_t>(std::min<Index>(high->pool_size, static_cast<Index>(pool.size()))));
    }
    // partial Fisher-Yates
    for (Index s = 0; s < per_class; ++s) {
      const auto remaining = static_cast<std::uint64_t>(pool.size()) - static_cast<std::uint64_t>(s);
      const auto pick = static_cast<std::size_t>(s) + static_cast<std::size_t>(uniform_index(rng, remaining));
      std::swap(pool[static_cast<std::size_t>(s)], pool[pick]);
      seeds.push_back({pool[static_cast<std::size_t>(s)], k});
    }
  }
  return seeds;
}

}  // namespace lssl
