#pragma once

#include <Eigen/Dense>

#include <string>
#include <variant>

#include "lssl/graph.hpp"
#include "lssl/solvers.hpp"

namespace lssl {

enum class HeatKind { standard, normalized, pagerank };

std::string_view to_string(HeatKind kind);

/// W = A (generalized degrees D' = D).
struct AdjacencyWeights {};
/// W = I - tau L (generalized degrees D' = I).
struct LazyWeights {
  double tau = 0.0;
};
using WeightChoice = std::variant<AdjacencyWeights, LazyWeights>;

struct RegularizedLaplacianKernel {
  double beta = 1.0;
};
struct HeatKernel {
  HeatKind kind = HeatKind::standard;
  double t = 1.0;
};
struct GeneralizedKernel {
  double sigma = 0.0;
  double mu = 1.0;
  WeightChoice weights = AdjacencyWeights{};
};

struct KernelSpec {
  std::variant<RegularizedLaplacianKernel, HeatKernel, GeneralizedKernel> method;
  SolverSpec solver;
  /// Poisson tail mass for heat kernels.
  double heat_tol = 1e-10;

  /// Checks parameter ranges against `g` (tau admissibility needs max degree).
  void validate(const Graph& g) const;
};

/// F = (I + beta L)^{-1} Y through the requested solver. Throws
/// NonConvergenceError if an iterative solver stops short of its tolerance.
Eigen::MatrixXd regularized_laplacian_apply(const Graph& g, double beta, const Eigen::MatrixXd& y,
                                            const SolverSpec& solver = {});

/// F = exp(-t M) Y for M = L, the normalized Laplacian, or I - P.
Eigen::MatrixXd heat_kernel_apply(const Graph& g, HeatKind kind, double t, const Eigen::MatrixXd& y,
                                  double tol = 1e-10);

/// F = mu/(2+mu) (I - 2/(2+mu) D'^{-sigma} W D'^{sigma-1})^{-1} Y, D' = diag(W 1).
///
/// sigma = 0 with adjacency weights is the PageRank-based method; with lazy
/// weights every sigma reduces to the regularized Laplacian at beta = 2 tau / mu.
/// mu = +inf returns Y.
Eigen::MatrixXd generalized_ssl_apply(const Graph& g, double sigma, double mu, const WeightChoice& weights,
                                      const Eigen::MatrixXd& y);

/// Dispatches on `spec.method`.
Eigen::MatrixXd apply_kernel(const Graph& g, const KernelSpec& spec, const Eigen::MatrixXd& y);

/// Dense Q_beta = (I + beta L)^{-1}, symmetrized. Rejects graphs above kDenseLimit nodes.
Eigen::MatrixXd kernel_matrix(const Graph& g, double beta);

}  // namespace lssl
