#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lssl/experiments.hpp"
#include "lssl/graph.hpp"
#include "lssl/verify.hpp"
#include "oracles.hpp"

using namespace lssl;

namespace {

Graph parse(const std::string& text, LoadOptions opt = {}) {
  std::istringstream in(text);
  return load_edge_list(in, opt);
}

}  // namespace

TEST_CASE("load_edge_list: path graph") {
  const Graph g = parse("0 1\n1 2");
  CHECK(g.n_nodes() == 3);
  CHECK(g.n_edges() == 2);
  CHECK(g.degrees()[0] == 1.0);
  CHECK(g.degrees()[1] == 2.0);
  CHECK(g.degrees()[2] == 1.0);
}

TEST_CASE("load_edge_list: duplicates merge by summing weights") {
  const Graph g = parse("0 1 2.0\n0 1 1.0");
  REQUIRE(g.n_edges() == 1);
  CHECK(g.edges()[0].w == 3.0);

  // reversed orientation is the same undirected edge
  const Graph h = parse("a b 1.5\nb a 0.5");
  REQUIRE(h.n_edges() == 1);
  CHECK(h.edges()[0].w == 2.0);
}

TEST_CASE("load_edge_list: names remapped in first-appearance order") {
  const Graph g = parse("# header\nValjean Javert 2\n\nJavert Cosette  # trailing comment\n");
  CHECK(g.n_nodes() == 3);
  CHECK(g.name_of(0) == "Valjean");
  CHECK(g.name_of(1) == "Javert");
  CHECK(g.name_of(2) == "Cosette");
  CHECK(*g.index_of("Cosette") == 2);
  CHECK_FALSE(g.index_of("Marius").has_value());
}

TEST_CASE("load_edge_list: rejects bad input") {
  CHECK_THROWS_AS(parse("0 1 0"), InputError);
  CHECK_THROWS_AS(parse("0 1 -2"), InputError);
  CHECK_THROWS_AS(parse("0 0 1"), InputError);
  CHECK_THROWS_AS(parse("0 1 x"), InputError);
  CHECK_THROWS_AS(parse("0 1 2 3"), InputError);
  CHECK_THROWS_AS(parse("0"), InputError);
}

TEST_CASE("load_edge_list: disconnected graphs report component sizes") {
  try {
    parse("0 1\n1 2\n3 4\n");
    FAIL("expected DisconnectedGraphError");
  } catch (const DisconnectedGraphError& e) {
    CHECK(e.component_sizes() == std::vector<Index>{3, 2});
  }
  const Graph g = parse("0 1\n1 2\n3 4\n", LoadOptions{true});
  CHECK(connected_components(g).count == 2);
}

TEST_CASE("load_edge_list: load -> write -> load is the identity") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = random_connected_graph(2 + static_cast<Index>(seed % 12), 0.3, seed, 0.1, 7.3);
    std::ostringstream first;
    write_edge_list(g, first);
    std::istringstream in1(first.str());
    const Graph once = load_edge_list(in1);
    std::ostringstream second;
    write_edge_list(once, second);
    std::istringstream in2(second.str());
    const Graph twice = load_edge_list(in2);
    CHECK(once == twice);
    CHECK(first.str() == second.str());
    REQUIRE(once.n_edges() == g.n_edges());
    // written ids come back as names; map them to the original nodes
    for (const Edge& e : once.edges()) {
      const Index i = std::stol(once.name_of(e.i));
      const Index j = std::stol(once.name_of(e.j));
      CHECK(g.adjacency().coeff(i, j) == e.w);
    }
  }
}

TEST_CASE("load_label_pairs resolves names and rejects unknown nodes") {
  const Graph g = parse("a b\nb c\n");
  std::istringstream ok("a 0\nc 1\n");
  const auto pairs = load_label_pairs(ok, g);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[1] == std::pair<Index, int>{2, 1});
  std::istringstream bad("z 0\n");
  CHECK_THROWS_AS(load_label_pairs(bad, g), InputError);
  std::istringstream neg("a -1\n");
  CHECK_THROWS_AS(load_label_pairs(neg, g), InputError);
}

TEST_CASE("laplacian: small graphs") {
  const Eigen::MatrixXd l2(laplacian(oracle::k2()));
  Eigen::Matrix2d expect;
  expect << 1, -1, -1, 1;
  CHECK(l2.isApprox(expect));

  const Eigen::MatrixXd lt(laplacian(oracle::triangle()));
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) CHECK(lt(i, j) == (i == j ? 2.0 : -1.0));
  }
}

TEST_CASE("laplacian: rows sum to zero, off-diagonals nonpositive") {
  const auto lm = bundled_lesmis();
  const SparseMatrix l = laplacian(lm.graph);
  CHECK((l * Eigen::VectorXd::Ones(l.rows())).cwiseAbs().maxCoeff() < 1e-12);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_connected_graph(12, 0.4, seed, 0.01, 100.0);
    const Eigen::MatrixXd dense(laplacian(g));
    CHECK((dense * Eigen::VectorXd::Ones(12)).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::MatrixXd off = dense;
    off.diagonal().setZero();
    CHECK(off.maxCoeff() <= 0.0);
    CHECK(dense.isApprox(oracle::laplacian(g)));
  }
}

TEST_CASE("normalized_laplacian") {
  const Eigen::MatrixXd k2(normalized_laplacian(oracle::k2()));
  CHECK(k2(0, 1) == -1.0);
  CHECK(k2(0, 0) == 1.0);

  const Eigen::MatrixXd tri(normalized_laplacian(oracle::triangle()));
  CHECK(tri(0, 1) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(tri(2, 2) == 1.0);

  const Eigen::MatrixXd star(normalized_laplacian(oracle::star3()));
  CHECK(star(0, 1) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(star(1, 0) == star(0, 1));

  const Graph isolated(3, {{0, 1, 1.0}});
  CHECK_THROWS_AS(normalized_laplacian(isolated), InputError);
}

TEST_CASE("standard_transition") {
  const Eigen::MatrixXd tri(standard_transition(oracle::triangle()));
  CHECK(tri(0, 1) == 0.5);
  CHECK(tri(2, 0) == 0.5);
  CHECK(tri(1, 1) == 0.0);

  const Eigen::MatrixXd path(standard_transition(oracle::path3()));
  CHECK(path(1, 0) == 0.5);
  CHECK(path(1, 1) == 0.0);
  CHECK(path(1, 2) == 0.5);

  const auto lm = bundled_lesmis();
  const Eigen::MatrixXd p(standard_transition(lm.graph));
  CHECK((p.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK(p.minCoeff() >= 0.0);
  CHECK(p.maxCoeff() <= 1.0);
}

TEST_CASE("lazy_transition") {
  const Eigen::MatrixXd k2(lazy_transition(oracle::k2(), 0.5));
  CHECK(k2(0, 0) == 0.5);
  CHECK(k2(0, 1) == 0.5);
  CHECK(k2(1, 0) == 0.5);

  const Eigen::MatrixXd path(lazy_transition(oracle::path3(), 0.25));
  CHECK(path(1, 0) == 0.25);
  CHECK(path(1, 1) == 0.5);
  CHECK(path(1, 2) == 0.25);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_connected_graph(10, 0.3, seed, 0.5, 3.0);
    const double tau = max_lazy_tau(g);
    const Eigen::MatrixXd p(lazy_transition(g, tau));
    const Eigen::MatrixXd expect = Eigen::MatrixXd::Identity(10, 10) - tau * Eigen::MatrixXd(laplacian(g));
    CHECK((p - expect).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.diagonal().cwiseAbs().minCoeff() <= 1e-15);  // boundary tau empties one diagonal
    CHECK((p - p.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
  }

  try {
    lazy_transition(oracle::path3(), 0.6);
    FAIL("expected rejection");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("0.5") != std::string::npos);
  }
  CHECK_THROWS_AS(lazy_transition(oracle::path3(), 0.0), InputError);
}

TEST_CASE("induced_subgraph keeps names and inner edges") {
  const Graph g = parse("a b 2\nb c\nc d\n");
  const Graph sub = induced_subgraph(g, {2, 1});
  CHECK(sub.n_nodes() == 2);
  CHECK(sub.name_of(0) == "c");
  REQUIRE(sub.n_edges() == 1);
  CHECK(sub.edges()[0].w == 1.0);
}

TEST_CASE("write_edge_list: node order survives a round trip") {
  // node "b" has no earlier neighbour; "c" and "d" are introduced together
  const Graph g = parse("a e\nc d 2\nb e\nd e\n");
  std::ostringstream out;
  write_edge_list(g, out);
  std::istringstream in(out.str());
  CHECK(load_edge_list(in) == g);
}
