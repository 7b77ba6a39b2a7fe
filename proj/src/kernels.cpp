#include "lssl/kernels.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace lssl {

std::string_view to_string(HeatKind kind) {
  switch (kind) {
    case HeatKind::standard: return "heat-standard";
    case HeatKind::normalized: return "heat-normalized";
    case HeatKind::pagerank: return "heat-pagerank";
  }
  return "unknown";
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_rows(const Graph& g, const Eigen::MatrixXd& y, const char* what) {
  if (y.rows() != g.n_nodes()) {
    throw InputError(std::string(what) + ": label matrix has " + std::to_string(y.rows()) +
                     " rows, graph has " + std::to_string(g.n_nodes()) + " nodes");
  }
}

void check_tau(const Graph& g, double tau) {
  if (!(tau > 0.0) || tau * g.max_degree() > 1.0 + 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "lazy weights: tau = " << tau << " outside (0, " << max_lazy_tau(g) << "]";
    throw InputError(os.str());
  }
}

}  // namespace

void KernelSpec::validate(const Graph& g) const {
  solver.validate();
  if (!(heat_tol > 0.0)) throw InputError("heat kernel tolerance must be positive");
  std::visit(overloaded{
                 [](const RegularizedLaplacianKernel& k) {
                   if (!(k.beta > 0.0)) throw InputError("regularized Laplacian: beta must be positive");
                 },
                 [](const HeatKernel& k) {
                   if (!(k.t >= 0.0)) throw InputError("heat kernel: t must be nonnegative");
                 },
                 [&](const GeneralizedKernel& k) {
                   if (!(k.mu > 0.0)) throw InputError("generalized method: mu must be positive");
                   if (!std::isfinite(k.sigma)) throw InputError("generalized method: sigma must be finite");
                   if (auto* lazy = std::get_if<LazyWeights>(&k.weights)) check_tau(g, lazy->tau);
                 },
             },
             method);
}

Eigen::MatrixXd regularized_laplacian_apply(const Graph& g, double beta, const Eigen::MatrixXd& y,
                                            const SolverSpec& solver) {
  if (!(beta > 0.0)) throw InputError("regularized Laplacian: beta must be positive");
  check_rows(g, y, "regularized Laplacian");
  solver.validate();
  switch (solver.kind) {
    case SolverKind::power_iteration: {
      auto res = power_iteration_solve(g, beta, y, solver);
      if (!res.report.converged) {
        throw NonConvergenceError("power iteration did not converge in " +
                                  std::to_string(res.report.iterations) + " iterations");
      }
      return std::move(res.f);
    }
    case SolverKind::conjugate_gradient: {
      auto res = cg_solve(regularized_operator(g, beta), y, solver);
      if (!res.report.converged) {
        throw NonConvergenceError("conjugate gradient did not converge in " +
                                  std::to_string(res.report.iterations) + " iterations");
      }
      return std::move(res.f);
    }
    case SolverKind::dense_cholesky:
      return cholesky_solve(Eigen::MatrixXd(regularized_operator(g, beta)), y);
  }
  throw InputError("unknown solver kind");
}

Eigen::MatrixXd heat_kernel_apply(const Graph& g, HeatKind kind, double t, const Eigen::MatrixXd& y,
                                  double tol) {
  if (!(t >= 0.0)) throw InputError("heat kernel: t must be nonnegative");
  check_rows(g, y, "heat kernel");
  if (t == 0.0) return y;
  switch (kind) {
    case HeatKind::standard: return expm_action(uniformize_laplacian(g), t, y, tol);
    case HeatKind::normalized: return expm_action(uniformize_normalized_laplacian(g), t, y, tol);
    case HeatKind::pagerank: return expm_action(uniformize_random_walk(g), t, y, tol);
  }
  throw InputError("unknown heat kernel kind");
}

Eigen::MatrixXd generalized_ssl_apply(const Graph& g, double sigma, double mu, const WeightChoice& weights,
                                      const Eigen::MatrixXd& y) {
  if (!(mu > 0.0)) throw InputError("generalized method: mu must be positive");
  if (!std::isfinite(sigma)) throw InputError("generalized method: sigma must be finite");
  check_rows(g, y, "generalized method");
  if (std::isinf(mu)) return y;
  const Index n = g.n_nodes();
  if (n > kDenseLimit) throw InputError("generalized method: graph too large for the dense solve");

  Eigen::MatrixXd w;
  if (auto* lazy = std::get_if<LazyWeights>(&weights)) {
    check_tau(g, lazy->tau);
    w = Eigen::MatrixXd(lazy_transition(g, lazy->tau));
  } else {
    w = Eigen::MatrixXd(g.adjacency());
  }
  const Eigen::ArrayXd gen_degree = w.rowwise().sum().array();
  if ((gen_degree <= 0.0).any()) throw InputError("generalized method: zero generalized degree");

  const double damping = 2.0 / (2.0 + mu);
  const Eigen::VectorXd left = gen_degree.pow(-sigma).matrix();
  const Eigen::VectorXd right = gen_degree.pow(sigma - 1.0).matrix();
  Eigen::MatrixXd system = -damping * (left.asDiagonal() * w * right.asDiagonal());
  system.diagonal().array() += 1.0;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  if (!(lu.rcond() > 1e-14)) throw NumericalError("generalized method: singular system");
  return lu.solve((mu / (2.0 + mu)) * y);
}

Eigen::MatrixXd apply_kernel(const Graph& g, const KernelSpec& spec, const Eigen::MatrixXd& y) {
  spec.validate(g);
  return std::visit(overloaded{
                        [&](const RegularizedLaplacianKernel& k) {
                          return regularized_laplacian_apply(g, k.beta, y, spec.solver);
                        },
                        [&](const HeatKernel& k) { return heat_kernel_apply(g, k.kind, k.t, y, spec.heat_tol); },
                        [&](const GeneralizedKernel& k) {
                          return generalized_ssl_apply(g, k.sigma, k.mu, k.weights, y);
                        },
                    },
                    spec.method);
}

Eigen::MatrixXd kernel_matrix(const Graph& g, double beta) {
  if (!(beta > 0.0)) throw InputError("kernel matrix: beta must be positive");
  const Index n = g.n_nodes();
  if (n > kDenseLimit) throw InputError("kernel matrix: graph exceeds the dense size guard");
  Eigen::MatrixXd q = cholesky_solve(Eigen::MatrixXd(regularized_operator(g, beta)), Eigen::MatrixXd::Identity(n, n));
  return 0.5 * (q + q.transpose());
}

}  // namespace lssl
