#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>

#include "lssl/graph.hpp"

namespace lssl {

enum class SolverKind { power_iteration, conjugate_gradient, dense_cholesky };

std::string_view to_string(SolverKind kind);
/// Accepts "power", "power-iteration", "cg", "conjugate-gradient", "cholesky", "dense-cholesky".
SolverKind parse_solver_kind(std::string_view text);

struct SolverSpec {
  SolverKind kind = SolverKind::conjugate_gradient;
  /// Relative residual (CG) or relative change (power iteration).
  double tolerance = 1e-10;
  int max_iterations = 10000;
  /// Workers for column-parallel solves; 0 = hardware concurrency.
  unsigned threads = 1;

  void validate() const;

  /// Dense Cholesky up to `dense_limit` nodes, conjugate gradient beyond.
  static SolverSpec automatic(Index n_nodes, Index dense_limit = 512);
};

struct SolveReport {
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
};

struct SolveResult {
  Eigen::MatrixXd f;
  SolveReport report;
};

/// Largest system size accepted by the dense paths.
inline constexpr Index kDenseLimit = 5000;

/// Sparse I + beta L.
SparseMatrix regularized_operator(const Graph& g, double beta);

/// Fixed-point iteration F <- beta (I + beta D)^{-1} A F + (I + beta D)^{-1} Y, from F = Y.
///
/// Stops once max|F_new - F| <= tolerance * max|F_new|. Hitting max_iterations
/// is reported through `converged = false`, not thrown.
SolveResult power_iteration_solve(const Graph& g, double beta, const Eigen::MatrixXd& y,
                                  const SolverSpec& spec);

/// Column-wise conjugate gradient for an SPD operator, zero initial guess.
///
/// Convergence per column: ||op x - y|| <= tolerance * ||y||. A non-positive
/// curvature direction throws NumericalError (the operator is not SPD).
SolveResult cg_solve(const SparseMatrix& op, const Eigen::MatrixXd& y, const SolverSpec& spec);

/// Dense LL^T factor-and-solve. Throws NumericalError when `op` is not SPD.
Eigen::MatrixXd cholesky_solve(const Eigen::MatrixXd& op, const Eigen::MatrixXd& y);

/// Generator written as M = rate (I - jump) with a nonnegative jump matrix.
struct UniformizedGenerator {
  double rate = 0.0;
  SparseMatrix jump;
};

/// L = c (I - (I - L/c)) with c = max degree.
UniformizedGenerator uniformize_laplacian(const Graph& g);
/// D^{-1/2} L D^{-1/2} = I - D^{-1/2} A D^{-1/2}.
UniformizedGenerator uniformize_normalized_laplacian(const Graph& g);
/// I - P with P = D^{-1} A.
UniformizedGenerator uniformize_random_walk(const Graph& g);

/// exp(-t M) Y by uniformization: e^{-ct} sum_k (ct)^k / k! S^k Y.
///
/// Long horizons are split into steps of bounded ct so the Poisson weights
/// stay representable; each step truncates once its tail mass is below
/// tol / steps.
Eigen::MatrixXd expm_action(const UniformizedGenerator& gen, double t, const Eigen::MatrixXd& y,
                            double tol = 1e-10);

}  // namespace lssl
