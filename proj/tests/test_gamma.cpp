#include <doctest.h>

#include <cmath>

#include "curvlab/gamma.hpp"
#include "curvlab/zoo.hpp"
#include "support.hpp"

using namespace curvlab;

namespace {

// classical carre du champ at each vertex
Vector classical_gamma(const MarkovChain& c, const Vector& f, const Vector& g) {
  Vector out = Vector::Zero(c.n());
  for (int x = 0; x < c.n(); ++x)
    for (int y = 0; y < c.n(); ++y) out(x) += 0.5L * c.Q(x, y) * (f(y) - f(x)) * (g(y) - g(x));
  return out;
}

Density random_density(int n, std::mt19937_64& rng, Real spread) {
  return Density::from_log(testing::random_vector(n, rng, spread));
}

}  // namespace

TEST_CASE("A and B routes agree") {
  const Mean m = Mean::logarithmic();
  for (int k = 0; k < 12; ++k) {
    MarkovChain c = testing::random_reversible(3 + k % 5, 100 + k);
    std::mt19937_64 rng(k);
    Density rho = random_density(c.n(), rng, 3);
    Vector f = testing::random_vector(c.n(), rng), g = testing::random_vector(c.n(), rng);
    Real a1 = A_rho(c, m, rho, f, g, ARoute::edge_sum), a2 = A_rho(c, m, rho, f, g, ARoute::gamma);
    CHECK(std::fabs(a1 - a2) < 1e-13 * (1 + std::fabs(a1)));
    Real b1 = B_rho(c, m, rho, f, BRoute::gamma2), b2 = B_rho(c, m, rho, f, BRoute::laplacian_split),
         b3 = B_rho(c, m, rho, f, BRoute::vector_field);
    Real s = 1 + std::fabs(b1);
    CHECK(std::fabs(b1 - b2) < 1e-12 * s);
    CHECK(std::fabs(b1 - b3) < 1e-12 * s);
  }
}

TEST_CASE("quadratic forms reproduce A, B, D") {
  const Mean m = Mean::logarithmic();
  for (int k = 0; k < 10; ++k) {
    MarkovChain c = testing::random_reversible(4 + k % 4, 200 + k);
    std::mt19937_64 rng(50 + k);
    Density rho = random_density(c.n(), rng, 2);
    QuadraticFormTriple t = quadratic_forms(c, m, rho);
    CHECK((t.A - t.A.transpose()).cwiseAbs().maxCoeff() < 1e-16);
    for (int r = 0; r < 3; ++r) {
      Vector f = testing::random_vector(c.n(), rng);
      Real A = A_rho(c, m, rho, f), B = B_rho(c, m, rho, f), D = D_rho(c, rho, f);
      CHECK(std::fabs(f.dot(t.A * f) - A) < 1e-13 * (1 + std::fabs(A)));
      CHECK(std::fabs(f.dot(t.B * f) - B) < 1e-12 * (1 + std::fabs(B)));
      CHECK(std::fabs(f.dot(t.D * f) - D) < 1e-12 * (1 + std::fabs(D)));
    }
  }
}

TEST_CASE("A_pm splits A(f, Delta f)") {
  const Mean m = Mean::logarithmic();
  MarkovChain c = testing::random_reversible(6, 9);
  std::mt19937_64 rng(2);
  Density rho = random_density(6, rng, 2);
  Vector f = testing::random_vector(6, rng);
  auto [p, q] = A_pm(c, m, rho, f);
  CHECK(p >= 0);
  CHECK(q >= 0);
  Real a = A_rho(c, m, rho, f, laplacian(c, f));
  CHECK(std::fabs((p - q) - a) < 1e-13 * (1 + p + q));
}

TEST_CASE("arithmetic mean with constant density is classical") {
  const Mean m = Mean::arithmetic();
  MarkovChain c = testing::random_reversible(7, 4);
  std::mt19937_64 rng(3);
  Vector f = testing::random_vector(7, rng), g = testing::random_vector(7, rng);
  Density one = Density::uniform(7);
  CHECK((delta_rho(c, m, one, f) - laplacian(c, f)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((gamma_rho(c, m, one, f, g) - classical_gamma(c, f, g)).cwiseAbs().maxCoeff() < 1e-15);
  // with rho = 1 the log mean also reduces: theta(1,1) = 1, d1(1,1) = 1/2
  CHECK((gamma_rho(c, Mean::logarithmic(), one, f, g) - classical_gamma(c, f, g)).cwiseAbs().maxCoeff() < 1e-15);
  // B = D for a constant density
  Real B = B_rho(c, Mean::logarithmic(), one, f), D = D_rho(c, one, f);
  CHECK(std::fabs(B - D) < 1e-13 * (1 + D));
}

TEST_CASE("cd_ratio is invariant under scaling of rho and f") {
  const Mean m = Mean::logarithmic();
  MarkovChain c = testing::random_reversible(5, 17);
  std::mt19937_64 rng(8);
  Density rho = random_density(5, rng, 2);
  Vector f = testing::random_vector(5, rng);
  Real r = cd_ratio(c, m, rho, f, 4);
  Density rho3{rho.values * 3, false};
  CHECK(std::fabs(cd_ratio(c, m, rho3, -2 * f + Vector::Constant(5, 7), 4) - r) < 1e-12 * (1 + std::fabs(r)));
}

TEST_CASE("degenerate witness throws") {
  MarkovChain c = cycle(6, 0.25L).chain;
  Density one = Density::uniform(6);
  CHECK_THROWS_AS(cd_ratio(c, Mean::logarithmic(), one, Vector::Constant(6, 2), kInf), DegenerateWitness);
  Vector f = Vector::Zero(6);
  f(0) = 1e-9L;
  f(1) = 1e3L;
  CHECK_NOTHROW(cd_ratio(c, Mean::logarithmic(), one, f, kInf));
  Density bad{Vector::Ones(6), false};
  bad.values(2) = 0;
  CHECK_THROWS_AS(A_rho(c, Mean::logarithmic(), bad, f), InputError);
}

TEST_CASE("three point witness scales with unnormalized pi") {
  // rho and pi differ by orders of magnitude; the ratio must not depend on the scale of pi
  ThreePoint tp = three_point(5);
  Real r = cd_ratio(tp.zc.chain, Mean::logarithmic(), tp.rho, tp.f, kInf);
  MarkovChain cn = tp.zc.chain.normalized();
  Real rn = cd_ratio(cn, Mean::logarithmic(), tp.rho, tp.f, kInf);
  CHECK(std::fabs(r - rn) < 1e-12 * (1 + std::fabs(r)));
}
