#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvlab/bounds.hpp"

namespace curvlab {

struct ZooChain {
  std::string family;
  std::vector<std::pair<std::string, std::string>> params;
  MarkovChain chain;
  std::optional<CayleyStructure> cayley;
  // structured starting points (log densities) for the entropic search
  std::vector<Vector> seeds;
};

ZooChain cycle(int n, Real q);
ZooChain hypercube(int d, Real q_edge);
ZooChain abelian_cayley(const std::vector<int>& orders, const std::vector<std::vector<int>>& gens,
                        const std::vector<Real>& rates);
ZooChain birth_death(const std::vector<Real>& Qplus, const std::vector<Real>& Qminus);

struct ThreePoint {
  ZooChain zc;
  Real alpha = 0;
  Real epsilon = 0;
  Density rho;
  Vector f;
};
ThreePoint three_point(Real alpha);

ZooChain perturbed_c6(Real q, Real eps);

struct Prism {
  ZooChain zc;
  MarkovChain base;
  Real r1 = 0, r2 = 0, q = 0;
  // state index of (x, k), k in {0, 1}
  int index(int x, int k) const { return k * base.n() + x; }
};
Prism prism(const MarkovChain& base, Real r1, Real r2, Real q);
std::pair<Density, Vector> prism_witness(const Prism& p, Real rho1, Real rho2, const Vector& psi0);

struct BernoulliLaplace {
  ZooChain zc;
  int L = 0, N = 0;
  std::vector<Real> lambda;
  Real rate_scale = 1;
  bool reversible = true;
  std::vector<std::vector<int>> subsets;

  // Johnson graph J(L, N): distance N - |x ∩ y|. Vanishing intensities remove
  // transitions, so the support graph can be sparser than J(L, N).
  DistanceMatrix johnson_distance() const;
  std::vector<Edge> johnson_edges() const;
};
// rate_scale defaults to the largest s <= 1 giving laziness >= 1/2
BernoulliLaplace bernoulli_laplace(int L, int N, const std::vector<Real>& lambda,
                                   std::optional<Real> rate_scale = std::nullopt);
long long binomial(int n, int k);
long long subset_rank(const std::vector<int>& sorted_subset);
std::vector<int> subset_unrank(long long rank, int N);

WeightedGraph complement_c4_c5();
WeightedGraph simple_random_walk(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace curvlab
