#include "lssl/solvers.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

#include "lssl/parallel.hpp"

namespace lssl {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::power_iteration: return "power-iteration";
    case SolverKind::conjugate_gradient: return "conjugate-gradient";
    case SolverKind::dense_cholesky: return "dense-cholesky";
  }
  return "unknown";
}

SolverKind parse_solver_kind(std::string_view text) {
  if (text == "power" || text == "power-iteration") return SolverKind::power_iteration;
  if (text == "cg" || text == "conjugate-gradient") return SolverKind::conjugate_gradient;
  if (text == "cholesky" || text == "dense-cholesky") return SolverKind::dense_cholesky;
  throw InputError("unknown solver '" + std::string(text) + "'");
}

void SolverSpec::validate() const {
  if (!(tolerance > 0.0)) throw InputError("solver tolerance must be positive");
  if (max_iterations < 1) throw InputError("solver max_iterations must be at least 1");
}

SolverSpec SolverSpec::automatic(Index n_nodes, Index dense_limit) {
  SolverSpec spec;
  spec.kind = n_nodes <= dense_limit ? SolverKind::dense_cholesky : SolverKind::conjugate_gradient;
  return spec;
}

SparseMatrix regularized_operator(const Graph& g, double beta) {
  SparseMatrix identity(g.n_nodes(), g.n_nodes());
  identity.setIdentity();
  SparseMatrix op = identity + beta * laplacian(g);
  op.makeCompressed();
  return op;
}

SolveResult power_iteration_solve(const Graph& g, double beta, const Eigen::MatrixXd& y,
                                  const SolverSpec& spec) {
  spec.validate();
  if (!(beta > 0.0)) throw InputError("power iteration: beta must be positive");
  if (y.rows() != g.n_nodes()) throw InputError("power iteration: label matrix has wrong row count");

  const Eigen::ArrayXd scale = 1.0 / (1.0 + beta * g.degrees().array());  // (I + beta D)^{-1}
  const Eigen::ArrayXd hop = beta * scale;                                  // beta (I + beta D)^{-1}
  const SparseMatrix& a = g.adjacency();
  const Eigen::MatrixXd restart = scale.matrix().asDiagonal() * y;

  SolveResult out;
  Eigen::MatrixXd f = y;
  Eigen::MatrixXd next(y.rows(), y.cols());
  for (int it = 1; it <= spec.max_iterations; ++it) {
    next.noalias() = a * f;
    next = hop.matrix().asDiagonal() * next;
    next += restart;
    const double scale_norm = next.cwiseAbs().maxCoeff();
    const double change = (next - f).cwiseAbs().maxCoeff();
    const double rel = scale_norm > 0.0 ? change / scale_norm : change;
    f.swap(next);
    out.report.iterations = it;
    out.report.final_residual = rel;
    if (rel <= spec.tolerance) {
      out.report.converged = true;
      break;
    }
  }
  out.f = std::move(f);
  return out;
}

namespace {

struct ColumnReport {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

ColumnReport cg_column(const SparseMatrix& op, const Eigen::VectorXd& b, Eigen::Ref<Eigen::VectorXd> x,
                       const SolverSpec& spec) {
  ColumnReport rep;
  x.setZero();
  const double b_norm = b.norm();
  if (b_norm == 0.0) {
    rep.converged = true;
    return rep;
  }
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  Eigen::VectorXd ap(b.size());
  double rr = r.squaredNorm();
  const double target = spec.tolerance * b_norm;
  for (int it = 1; it <= spec.max_iterations; ++it) {
    ap.noalias() = op * p;
    const double curvature = p.dot(ap);
    if (!(curvature > 0.0)) {
      throw NumericalError("conjugate gradient breakdown: non-positive curvature (operator not SPD)");
    }
    const double alpha = rr / curvature;
    x += alpha * p;
    r -= alpha * ap;
    const double rr_next = r.squaredNorm();
    rep.iterations = it;
    if (std::sqrt(rr_next) <= target) {
      // confirm against the true residual; the recursive one drifts
      const double true_res = (b - op * x).norm();
      if (true_res <= target) {
        rep.residual = true_res / b_norm;
        rep.converged = true;
        return rep;
      }
      r = b - op * x;
      p = r;
      rr = r.squaredNorm();
      continue;
    }
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  rep.residual = (b - op * x).norm() / b_norm;
  rep.converged = rep.residual <= spec.tolerance;
  return rep;
}

}  // namespace

SolveResult cg_solve(const SparseMatrix& op, const Eigen::MatrixXd& y, const SolverSpec& spec) {
  spec.validate();
  if (op.rows() != op.cols() || op.rows() != y.rows()) {
    throw InputError("conjugate gradient: dimension mismatch");
  }
  SolveResult out;
  out.f.resize(y.rows(), y.cols());
  std::vector<ColumnReport> reports(static_cast<std::size_t>(y.cols()));
  parallel_for(y.cols(), spec.threads, [&](std::ptrdiff_t k) {
    reports[static_cast<std::size_t>(k)] = cg_column(op, y.col(k), out.f.col(k), spec);
  });
  out.report.converged = true;
  for (const auto& r : reports) {
    out.report.iterations = std::max(out.report.iterations, r.iterations);
    out.report.final_residual = std::max(out.report.final_residual, r.residual);
    out.report.converged = out.report.converged && r.converged;
  }
  return out;
}

Eigen::MatrixXd cholesky_solve(const Eigen::MatrixXd& op, const Eigen::MatrixXd& y) {
  if (op.rows() != op.cols() || op.rows() != y.rows()) {
    throw InputError("cholesky: dimension mismatch");
  }
  if (op.rows() > kDenseLimit) throw InputError("cholesky: system too large for the dense path");
  Eigen::LLT<Eigen::MatrixXd> llt(op);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("cholesky: non-positive pivot (operator not SPD)");
  }
  return llt.solve(y);
}

UniformizedGenerator uniformize_laplacian(const Graph& g) {
  UniformizedGenerator gen;
  gen.rate = g.max_degree();
  SparseMatrix identity(g.n_nodes(), g.n_nodes());
  identity.setIdentity();
  if (gen.rate > 0.0) {
    gen.jump = identity - (1.0 / gen.rate) * laplacian(g);
  } else {
    gen.jump = identity;
  }
  gen.jump.makeCompressed();
  return gen;
}

UniformizedGenerator uniformize_normalized_laplacian(const Graph& g) {
  UniformizedGenerator gen;
  gen.rate = 1.0;
  SparseMatrix identity(g.n_nodes(), g.n_nodes());
  identity.setIdentity();
  gen.jump = identity - normalized_laplacian(g);
  gen.jump.prune(0.0);
  return gen;
}

UniformizedGenerator uniformize_random_walk(const Graph& g) {
  UniformizedGenerator gen;
  gen.rate = 1.0;
  gen.jump = standard_transition(g);
  return gen;
}

Eigen::MatrixXd expm_action(const UniformizedGenerator& gen, double t, const Eigen::MatrixXd& y,
                            double tol) {
  if (!(t >= 0.0)) throw InputError("expm_action: t must be nonnegative");
  if (!(tol > 0.0)) throw InputError("expm_action: tol must be positive");
  if (gen.jump.rows() != y.rows()) throw InputError("expm_action: dimension mismatch");
  const double lambda_total = gen.rate * t;
  if (lambda_total == 0.0) return y;

  constexpr double kMaxStepRate = 30.0;
  const int steps = std::max(1, static_cast<int>(std::ceil(lambda_total / kMaxStepRate)));
  const double lambda = lambda_total / steps;
  const double step_tol = tol / steps;

  Eigen::MatrixXd f = y;
  Eigen::MatrixXd power(y.rows(), y.cols());
  Eigen::MatrixXd next(y.rows(), y.cols());
  for (int s = 0; s < steps; ++s) {
    double weight = std::exp(-lambda);
    power = f;
    f = weight * power;
    for (int k = 1;; ++k) {
      // Poisson tail beyond k-1 is bounded by w_k (k+1)/(k+1-lambda) once k+1 > lambda
      weight *= lambda / k;
      if (k + 1 > lambda && weight * (k + 1) / (k + 1 - lambda) < step_tol) break;
      next.noalias() = gen.jump * power;
      power.swap(next);
      f += weight * power;
    }
  }
  return f;
}

}  // namespace lssl
