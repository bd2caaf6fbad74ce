#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curvlab/zoo.hpp"
#include "support.hpp"

using namespace curvlab;

namespace {

bool has_kind(const ValidationReport& r, const std::string& k) {
  for (const auto& v : r.violations)
    if (v.kind == k) return true;
  return false;
}

}  // namespace

TEST_CASE("validation flags each defect") {
  Matrix Q(2, 2);
  Q << 0.5, 0.5, 0.5, 0.5;
  Vector pi(2);
  pi << 1, 1;
  CHECK(validate_chain(MarkovChain(Q, pi)).accepted);

  Matrix Qs = Q;
  Qs(0, 0) = 0.6;
  CHECK(has_kind(validate_chain(MarkovChain(Qs, pi)), "stochasticity"));

  Matrix Qn = Q;
  Qn(0, 1) = -0.1;
  Qn(0, 0) = 1.1;
  CHECK(has_kind(validate_chain(MarkovChain(Qn, pi)), "negative_entry"));

  Vector p2(2);
  p2 << 1, 2;
  CHECK(has_kind(validate_chain(MarkovChain(Q, p2)), "reversibility"));

  Vector p0(2);
  p0 << 1, 0;
  CHECK(has_kind(validate_chain(MarkovChain(Q, p0)), "nonpositive_pi"));

  Matrix I = Matrix::Identity(2, 2);
  CHECK(has_kind(validate_chain(MarkovChain(I, pi)), "irreducibility"));
  CHECK_THROWS_AS(require_valid(MarkovChain(I, pi)), InputError);
}

TEST_CASE("weighted graph round trip reproduces weights up to scale") {
  for (int k = 0; k < 10; ++k) {
    MarkovChain c = testing::random_reversible(3 + k % 6, 40 + k);
    WeightedGraph g = to_weighted_graph(c);
    MarkovChain c2 = from_weighted_graph(g);
    CHECK((c.Q() - c2.Q()).cwiseAbs().maxCoeff() < 1e-15);
    WeightedGraph g2 = to_weighted_graph(c2);
    REQUIRE(g.edges.size() == g2.edges.size());
    const Real s = g2.edges[0].w / g.edges[0].w;
    for (std::size_t i = 0; i < g.edges.size(); ++i) CHECK(std::fabs(g2.edges[i].w - s * g.edges[i].w) < 1e-15);
  }
}

TEST_CASE("graph distance") {
  CHECK(graph_distance(cycle(6, 0.25L).chain)(0, 3) == 3);
  MarkovChain h = hypercube(3, Real(1) / 3).chain;
  DistanceMatrix d = graph_distance(h);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) CHECK(d(x, y) == __builtin_popcount(static_cast<unsigned>(x ^ y)));
  auto b = bernoulli_laplace(5, 2, std::vector<Real>(5, 1));
  CHECK(graph_distance(b.zc.chain).diameter() == 2);
  CHECK(b.johnson_distance().diameter() == 2);
}

TEST_CASE("laplacian and gradient") {
  MarkovChain c = testing::random_reversible(6, 3);
  std::mt19937_64 rng(1);
  Vector f = testing::random_vector(6, rng), g = testing::random_vector(6, rng);
  // symmetry of Delta in l2(pi) and the Green formula
  CHECK(std::fabs(inner_pi(c, laplacian(c, f), g) - inner_pi(c, f, laplacian(c, g))) < 1e-14);
  CHECK(std::fabs(inner_pi(c, gradient(c, f), gradient(c, g)) + inner_pi(c, laplacian(c, f), g)) < 1e-14);
  CHECK((laplacian_matrix(c) * f - laplacian(c, f)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(laplacian(c, Vector::Ones(6)).cwiseAbs().maxCoeff() < 1e-16);
}

TEST_CASE("spectral gap of cycle") {
  for (int n : {5, 8, 16}) {
    Real q = 0.3L;
    Real lam = 2 * q * (1 - std::cos(2 * std::numbers::pi_v<long double> / n));
    CHECK(std::fabs(spectral_gap(cycle(n, q).chain) - lam) < 1e-15);
  }
}

TEST_CASE("q triple") {
  MarkovChain c = testing::random_reversible(5, 8);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      for (int z = 0; z < 5; ++z) {
        CHECK(std::fabs(q_triple(c, x, y, z) - c.Q(y, x) * c.Q(y, z) * c.pi(y)) < 1e-18);
        CHECK(std::fabs(q_triple(c, x, y, z) - q_triple(c, z, y, x)) < 1e-16);
      }
}
