#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <iosfwd>
#include <string>
#include <vector>

#include "lssl/graph.hpp"
#include "lssl/solvers.hpp"

namespace lssl {

/// One paired comparison: result r of item i confronted with item j, E(r) = v_i - v_j.
struct Comparison {
  Index i = 0;
  Index j = 0;
  double r = 0.0;
};

struct ComparisonSet {
  Index n_items = 0;
  std::vector<Comparison> records;

  /// i != j, ids in range, at least one record.
  void validate() const;
};

/// Reads "i j r" lines with 0-based integer item ids; n_items = max id + 1.
ComparisonSet load_comparisons(std::istream& in);
ComparisonSet load_comparisons_file(const std::string& path);

/// M x N design matrix: row k has +1 at i and -1 at j.
Eigen::SparseMatrix<double> incidence_matrix(const ComparisonSet& c);

/// s = X^T r, accumulated straight from the records.
Eigen::VectorXd comparison_sums(const ComparisonSet& c);

/// Graph whose edge weights count comparisons between each pair; X^T X is its Laplacian.
/// May be disconnected.
Graph comparison_graph(const ComparisonSet& c);

struct RidgeEstimate {
  Eigen::VectorXd values;
  /// Connected components of the comparison graph; values are only
  /// identifiable up to a shift within each component.
  Components components;

  bool connected() const { return components.count <= 1; }
};

/// (lambda I + X^T X)^{-1} X^T r computed as (I + beta L)^{-1} beta s with beta = 1/lambda.
RidgeEstimate ridge_estimate(const ComparisonSet& c, double lambda, const SolverSpec& solver);
/// Same, with SolverSpec::automatic for the item count.
RidgeEstimate ridge_estimate(const ComparisonSet& c, double lambda);

/// Best-linear-predictor regularization: beta = sigma1^2 / sigma2^2.
double bayes_beta(double sigma1_sq, double sigma2_sq);

}  // namespace lssl
