#include "lssl/ridge.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lssl/kernels.hpp"

namespace lssl {

void ComparisonSet::validate() const {
  if (records.empty()) throw InputError("comparisons: need at least one record");
  for (const auto& rec : records) {
    if (rec.i == rec.j) throw InputError("comparisons: item " + std::to_string(rec.i) + " compared with itself");
    if (rec.i < 0 || rec.j < 0 || rec.i >= n_items || rec.j >= n_items) {
      throw InputError("comparisons: item id out of range");
    }
    if (!std::isfinite(rec.r)) throw InputError("comparisons: non-finite result");
  }
}

ComparisonSet load_comparisons(std::istream& in) {
  ComparisonSet c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream is(line);
    std::string ti, tj, tr;
    if (!(is >> ti)) continue;
    std::string extra;
    if (!(is >> tj >> tr) || (is >> extra)) {
      throw InputError("comparisons line " + std::to_string(line_no) + ": expected 'i j r'");
    }
    Comparison rec;
    auto parse_id = [&](const std::string& tok) {
      Index v = -1;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0) {
        throw InputError("comparisons line " + std::to_string(line_no) + ": bad item id '" + tok + "'");
      }
      return v;
    };
    rec.i = parse_id(ti);
    rec.j = parse_id(tj);
    auto [ptr, ec] = std::from_chars(tr.data(), tr.data() + tr.size(), rec.r);
    if (ec != std::errc() || ptr != tr.data() + tr.size()) {
      throw InputError("comparisons line " + std::to_string(line_no) + ": bad result '" + tr + "'");
    }
    if (rec.i == rec.j) {
      throw InputError("comparisons line " + std::to_string(line_no) + ": item compared with itself");
    }
    c.n_items = std::max({c.n_items, rec.i + 1, rec.j + 1});
    c.records.push_back(rec);
  }
  c.validate();
  return c;
}

ComparisonSet load_comparisons_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open comparison file '" + path + "'");
  return load_comparisons(in);
}

Eigen::SparseMatrix<double> incidence_matrix(const ComparisonSet& c) {
  c.validate();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * c.records.size());
  for (std::size_t k = 0; k < c.records.size(); ++k) {
    trips.emplace_back(static_cast<Index>(k), c.records[k].i, 1.0);
    trips.emplace_back(static_cast<Index>(k), c.records[k].j, -1.0);
  }
  Eigen::SparseMatrix<double> x(static_cast<Index>(c.records.size()), c.n_items);
  x.setFromTriplets(trips.begin(), trips.end());
  return x;
}

Eigen::VectorXd comparison_sums(const ComparisonSet& c) {
  c.validate();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(c.n_items);
  for (const auto& rec : c.records) {
    s[rec.i] += rec.r;
    s[rec.j] -= rec.r;
  }
  return s;
}

Graph comparison_graph(const ComparisonSet& c) {
  c.validate();
  std::vector<Edge> edges;
  edges.reserve(c.records.size());
  for (const auto& rec : c.records) edges.push_back({rec.i, rec.j, 1.0});
  return Graph(c.n_items, std::move(edges));
}

RidgeEstimate ridge_estimate(const ComparisonSet& c, double lambda, const SolverSpec& solver) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("ridge: lambda must be positive and finite");
  const Graph g = comparison_graph(c);
  const double beta = 1.0 / lambda;
  RidgeEstimate out;
  out.components = connected_components(g);
  // the system decouples across components, so one solve covers all of them
  out.values = regularized_laplacian_apply(g, beta, beta * comparison_sums(c), solver).col(0);
  return out;
}

RidgeEstimate ridge_estimate(const ComparisonSet& c, double lambda) {
  return ridge_estimate(c, lambda, SolverSpec::automatic(c.n_items));
}

double bayes_beta(double sigma1_sq, double sigma2_sq) {
  if (!(sigma1_sq > 0.0) || !(sigma2_sq > 0.0)) throw InputError("bayes_beta: variances must be positive");
  return sigma1_sq / sigma2_sq;
}

}  // namespace lssl
