#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "lssl/graph.hpp"

namespace lssl {

/// (node, class) pair marking a labelled point.
struct Seed {
  Index node = 0;
  int cls = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};
using SeedSet = std::vector<Seed>;

/// Complete class assignment of every node; each class in [0, K) is non-empty.
class GroundTruth {
 public:
  GroundTruth(std::vector<int> assignment, int n_classes);
  /// Infers K = max class + 1.
  explicit GroundTruth(std::vector<int> assignment);

  Index n_nodes() const { return static_cast<Index>(assignment_.size()); }
  int n_classes() const { return n_classes_; }
  int operator[](Index node) const { return assignment_[static_cast<std::size_t>(node)]; }
  const std::vector<int>& assignment() const { return assignment_; }
  std::vector<Index> members(int cls) const;
  std::vector<Index> class_sizes() const;

 private:
  std::vector<int> assignment_;
  int n_classes_ = 0;
};

/// Builds a ground truth from "node class" pairs; every node must appear exactly once.
GroundTruth ground_truth_from_pairs(const std::vector<std::pair<Index, int>>& pairs, Index n_nodes);

/// N x K 0/1 matrix Y with Y(i, k) = 1 iff node i is a seed of class k.
///
/// Rejects classes without seeds, nodes seeded into two different classes
/// and out-of-range ids. Repeating an identical seed is harmless.
Eigen::MatrixXd build_label_matrix(const SeedSet& seeds, Index n_nodes, int n_classes);

/// Row-wise argmax; ties go to the smallest class index.
std::vector<int> classify(const Eigen::MatrixXd& f);

/// Fraction of correctly classified nodes; seeds are excluded unless include_seeds.
double precision(const std::vector<int>& predicted, const GroundTruth& truth, const SeedSet& seeds,
                 bool include_seeds = false);

struct UniformSeeding {};
/// Draw from the pool_size highest-degree nodes of each class (ties by node id).
struct HighDegreeSeeding {
  Index pool_size = 3;
};
using SeedStrategy = std::variant<UniformSeeding, HighDegreeSeeding>;

/// per_class seeds for every class, deterministic in rng_seed. Output is
/// ordered by class, then by draw order.
SeedSet sample_seeds(const GroundTruth& truth, const Graph& g, const SeedStrategy& strategy, Index per_class,
                     std::uint64_t rng_seed);

}  // namespace lssl
