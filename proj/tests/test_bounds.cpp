#include <doctest.h>

#include <cmath>

#include "curvlab/bounds.hpp"
#include "curvlab/search.hpp"
#include "curvlab/zoo.hpp"
#include "support.hpp"

using namespace curvlab;

TEST_CASE("Cayley structure of Z3 x Z4") {
  CayleyStructure cs = make_cayley({3, 4}, {{1, 0}, {0, 1}}, {0.1L, 0.1L});
  CHECK(cs.group_size() == 12);
  CHECK(cs.gens.size() == 4u);
  CHECK(cs.r() == 4);
  CHECK(cs.order_two().empty());
  for (int i = 0; i < 12; ++i) CHECK(cs.index(cs.element(i)) == i);
  for (std::size_t j = 0; j < cs.gens.size(); ++j) {
    int inv = cs.inverse(static_cast<int>(j));
    REQUIRE(inv >= 0);
    for (int x = 0; x < 12; ++x) CHECK(cs.apply(cs.apply(x, static_cast<int>(j)), inv) == x);
  }
  CayleyStructure z2 = make_cayley({2, 2}, {{1, 0}, {0, 1}}, {0.2L, 0.2L});
  CHECK(z2.gens.size() == 2u);
  CHECK(z2.order_two().size() == 2u);
  CHECK_THROWS_AS(make_cayley({3}, {{0}}, {0.1L}), InputError);
  CHECK_THROWS_AS(make_cayley({3}, {{1}}, {0.6L}), InputError);
}

TEST_CASE("verify_cayley rejects a foreign chain") {
  ZooChain z = abelian_cayley({5}, {{1}}, {0.2L});
  CHECK_NOTHROW(verify_cayley(z.chain, *z.cayley));
  ZooChain other = cycle(5, 0.3L);
  CHECK_THROWS_AS(verify_cayley(other.chain, *z.cayley), InputError);
}

TEST_CASE("T decomposition sums to B") {
  ZooChain z = abelian_cayley({3, 4}, {{1, 0}, {0, 1}}, {0.1L, 0.15L});
  const Mean m = Mean::logarithmic();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    Density rho = Density::from_log(testing::random_vector(12, rng, 3));
    Vector f = testing::random_vector(12, rng);
    TDecomposition t = t_decomposition(z.chain, *z.cayley, m, rho, f);
    Real B = B_rho(z.chain, m, rho, f);
    CHECK(std::fabs(t.total() - B) < 1e-12 * (1 + std::fabs(B)));
    CHECK(t.T13 >= 0);
  }
}

TEST_CASE("cycle witness shape") {
  const int n = 5;
  CycleWitness w = cycle_witness(n);
  REQUIRE(w.f.size() == 4 * n);
  ZooChain z = cycle(4 * n, 0.5L);
  Vector L = laplacian(z.chain, w.f);
  for (int idx = 0; idx < 4 * n; ++idx) {
    int x = w.coordinate[idx];
    CHECK(((x % (4 * n)) + 4 * n) % (4 * n) == idx);
    // |grad f| = 1 on every edge, harmonic away from the turning points
    int nx = (idx + 1) % (4 * n);
    CHECK(std::fabs(std::fabs(w.f(nx) - w.f(idx)) - 1) < 1e-18);
    if (x != n && x != -n) CHECK(std::fabs(L(idx)) < 1e-18);
  }
  Real v = cd_ratio(z.chain, Mean::logarithmic(), w.rho, w.f, kInf);
  CHECK(v > 0);
  CHECK(v <= cycle_upper_bound(n, 0.5L));
}

TEST_CASE("universal formulas") {
  CHECK(universal_lower(1) == -2.5L);
  CHECK(universal_lower(0.5L) == -4.5L);
  CHECK(universal_lower_findim(1, kInf) == -4.5L);
  CHECK(universal_lower_findim(1, 2) == -8.5L);
  CHECK(universal_lower_findim(0.5L, 2) < universal_lower_findim(0.5L, 4));
  CHECK_THROWS_AS(universal_lower(0), InputError);
  CHECK_THROWS_AS(universal_lower_findim(0.5L, 0), InputError);
}

TEST_CASE("universal lower bound holds on random witnesses") {
  for (int k = 0; k < 6; ++k) {
    MarkovChain c = testing::random_reversible(4 + k % 3, 500 + k);
    auto ws = random_witnesses(c, 200, k, 4);
    CHECK(check_CD(c, Mean::logarithmic(), universal_lower(c.q_min()), kInf, ws).ok());
    auto ws3 = random_witnesses(c, 200, k, 4, 3);
    CHECK(check_CD(c, Mean::logarithmic(), universal_lower_findim(c.q_min(), 3), 3, ws3).ok());
  }
}

TEST_CASE("perturbation bound") {
  ZooChain a = cycle(6, 0.2L);
  ZooChain b = perturbed_c6(0.2L, 1e-3L);
  PerturbationBound p = perturbation_bound(a.chain, b.chain);
  CHECK(p.epsilon > 0);
  CHECK(p.epsilon < 0.01L);
  CHECK(p.bound > 0);
  CHECK(perturbation_bound(a.chain, a.chain).epsilon == 0);
  CHECK_THROWS_AS(perturbation_bound(a.chain, cycle(7, 0.2L).chain), InputError);
  CHECK(delta_perturbation_bound(0.01L, 0.5L) > 0);
  CHECK_THROWS_AS(delta_perturbation_bound(1, 0.5L), InputError);
}

TEST_CASE("Lichnerowicz upper bound is the spectral gap") {
  MarkovChain c = hypercube(3, Real(1) / 3).chain;
  CHECK(std::fabs(lichnerowicz_upper(c) - Real(2) / 3) < 1e-15);
}
