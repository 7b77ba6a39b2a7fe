#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lssl/graph.hpp"

namespace lssl {

/// Largest violation of d_ik <= d_ij + d_jk over all triples (0 if none).
template <typename Derived>
typename Derived::Scalar triangle_violation(const Eigen::MatrixBase<Derived>& d) {
  using Scalar = typename Derived::Scalar;
  const Index n = d.rows();
  Scalar worst(0);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      for (Index k = 0; k < n; ++k) {
        worst = std::max(worst, d(i, k) - d(i, j) - d(j, k));
      }
    }
  }
  return worst;
}

/// rho_ij = beta (q_ii + q_jj - q_ij - q_ji).
///
/// With `verify`, throws NumericalError when the result breaks the triangle
/// inequality by more than 1e-9 (which means `q` is not a valid kernel).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> adjusted_forest_distance(
    const Eigen::MatrixBase<Derived>& q, typename Derived::Scalar beta, bool verify = true) {
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (q.rows() != q.cols()) throw InputError("adjusted forest distance: kernel must be square");
  const auto diag = q.diagonal();
  Matrix rho = beta * ((diag.replicate(1, q.cols()) + diag.transpose().replicate(q.rows(), 1)) - q - q.transpose());
  rho.diagonal().setZero();
  if (verify && triangle_violation(rho) > 1e-9) {
    throw NumericalError("adjusted forest distance violates the triangle inequality");
  }
  return rho;
}

/// d_ij = -ln(q_ij / sqrt(q_ii q_jj)); requires a strictly positive kernel.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> log_forest_distance(
    const Eigen::MatrixBase<Derived>& q, bool verify = true) {
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (q.rows() != q.cols()) throw InputError("log forest distance: kernel must be square");
  if ((q.array() <= 0).any()) throw NumericalError("log forest distance: nonpositive kernel entry");
  const auto root = q.diagonal().array().sqrt().matrix();
  Matrix d = -(q.array() / (root * root.transpose()).array()).log().matrix();
  d = 0.5 * (d + d.transpose());
  d.diagonal().setZero();
  if (verify && triangle_violation(d) > 1e-9) {
    throw NumericalError("log forest distance violates the triangle inequality");
  }
  return d;
}

/// H = (L + 11^T/N)^{-1} - 11^T/N, the group inverse of a connected-graph Laplacian.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> group_inverse(
    const Eigen::MatrixBase<Derived>& l) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Index n = l.rows();
  if (n != l.cols() || n == 0) throw InputError("group inverse: Laplacian must be square and non-empty");
  const Matrix avg = Matrix::Constant(n, n, Scalar(1) / Scalar(n));
  Eigen::LDLT<Matrix> ldlt(l + avg);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw NumericalError("group inverse: L + 11^T/N is singular (graph disconnected?)");
  }
  Matrix h = ldlt.solve(Matrix::Identity(n, n)) - avg;
  return Scalar(0.5) * (h + h.transpose());
}

/// Resistance distance with edge weights as conductances: h_ii + h_jj - 2 h_ij.
Eigen::MatrixXd resistance_distance(const Graph& g);

/// G plus a hub node (index N) joined to every node by an edge of weight 1/beta.
Graph hub_augmented_graph(const Graph& g, double beta);

/// Unweighted hop distances by BFS; -1 for unreachable pairs.
Eigen::MatrixXi hop_distances(const Graph& g);

/// True iff every path from i to k visits j (j == i or j == k counts as visiting).
bool every_path_visits(const Graph& g, Index i, Index j, Index k);

struct ForestCensus {
  /// Total beta-weight of all spanning rooted forests.
  double total_weight = 0.0;
  /// (i, j): beta-weight of forests where i's tree is rooted at j.
  Eigen::MatrixXd rooted_weights;
  std::uint64_t forest_count = 0;
};

inline constexpr Index kForestEnumerationLimit = 10;

/// Exhaustive census over acyclic edge subsets; rootings are accounted for
/// analytically from tree sizes. Rejects graphs above kForestEnumerationLimit nodes.
ForestCensus enumerate_rooted_forests(const Graph& g, double beta);

/// Empirical distribution of the stopping node of a walk with transitions
/// I - tau L run for K ~ Geometric(q) steps, Pr{K = k} = q (1-q)^k.
///
/// Converges to row `start` of Q_beta with beta = tau (1/q - 1). Samples are
/// split into fixed chunks with seeds derived from rng_seed, so the result
/// does not depend on `threads`.
Eigen::VectorXd monte_carlo_geometric_walk(const Graph& g, double tau, double q, Index start,
                                           std::int64_t n_samples, std::uint64_t rng_seed, unsigned threads = 1);

struct TransitionalReport {
  /// max over triples of q_ij q_jk - q_ik q_jj (should be <= 0).
  double max_excess = 0.0;
  /// max |q_ij q_jk - q_ik q_jj| over cutpoint triples.
  double max_cutpoint_gap = 0.0;
  /// min (q_ik q_jj - q_ij q_jk) over non-cutpoint triples (should be > 0).
  double min_strict_gap = 0.0;
  std::int64_t cutpoint_triples = 0;
  std::int64_t strict_triples = 0;
  bool inequality_holds = false;
  bool equality_on_cutpoints = false;
  bool strict_elsewhere = false;

  bool ok() const { return inequality_holds && equality_on_cutpoints && strict_elsewhere; }
};

/// Checks q_ij q_jk <= q_ik q_jj over all triples, with equality exactly when
/// every i-k path visits j. `tol` bounds both the allowed excess and the
/// equality gap.
TransitionalReport check_transitional_measure(const Eigen::MatrixXd& q, const Graph& g, double tol = 1e-12);

}  // namespace lssl
