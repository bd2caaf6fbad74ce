#pragma once

#include <string>
#include <vector>

#include "curvlab/gamma.hpp"

namespace curvlab {

// Finite abelian group as a product of cyclic factors; elements indexed in mixed radix,
// last factor fastest.
struct CayleyStructure {
  std::vector<int> orders;
  std::vector<std::vector<int>> gens;
  std::vector<Real> rates;

  int group_size() const;
  int index(const std::vector<int>& g) const;
  std::vector<int> element(int idx) const;
  int apply(int idx, int gen) const;
  int element_order(const std::vector<int>& g) const;
  int generator_order(int gen) const { return element_order(gens[gen]); }
  int inverse(int gen) const;
  int r() const;
  std::vector<int> order_two() const;
  Real q_min() const;
};

// closes S under inverses (equal rates), rejects identity and rate asymmetry
CayleyStructure make_cayley(std::vector<int> orders, std::vector<std::vector<int>> gens, std::vector<Real> rates);
// throws InputError unless the chain is the translation-invariant walk described by cs
void verify_cayley(const MarkovChain& c, const CayleyStructure& cs, Real tol = 1e-12);

struct CDPair {
  Real K;
  Real N;
  std::string formula;
};

std::vector<CDPair> cayley_lower_bounds(const CayleyStructure& cs);
Real cycle_upper_bound(int n, Real q);

struct CycleWitness {
  Density rho;
  Vector f;
  std::vector<int> coordinate;  // state index -> vertex in {-2n+1, ..., 2n}
};
CycleWitness cycle_witness(int n);

Real universal_lower(Real q_min);
Real universal_lower_findim(Real q_min, Real N);

struct PerturbationBound {
  Real epsilon = 0;
  Real bound = 0;
  Real scale = 1;
  Real q_min = 0;
};
PerturbationBound perturbation_bound(const WeightedGraph& g, const WeightedGraph& gt);
PerturbationBound perturbation_bound(const MarkovChain& c, const MarkovChain& ct);
Real delta_perturbation_bound(Real eps, Real q_min);
Real lichnerowicz_upper(const MarkovChain& c);

struct TDecomposition {
  Real T13 = 0;
  Real T4 = 0;
  Real total() const { return T13 + T4; }
};
TDecomposition t_decomposition(const MarkovChain& c, const CayleyStructure& cs, const Mean& m,
                               const Density& rho, const Vector& f);

}  // namespace curvlab
