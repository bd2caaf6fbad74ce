#pragma once

#include <optional>
#include <vector>

#include "curvlab/transport.hpp"

namespace curvlab {

struct BakryEmeryResult {
  int x = 0;
  Real N = kInf;
  Real K = 0;
  Vector certificate;  // violator at K + 1e-7, f(x) = 0; empty when K = -inf
};

BakryEmeryResult bakry_emery_local(const MarkovChain& c, int x, Real N);
std::vector<Real> bakry_emery_per_vertex(const MarkovChain& c, Real N);
Real bakry_emery_global(const MarkovChain& c, Real N);

struct BirthDeathLayout {
  bool cycle = false;
  int n = 0;
  int next(int i) const { return cycle ? (i + 1) % n : i + 1; }
  int prev(int i) const { return cycle ? (i + n - 1) % n : i - 1; }
  bool has(int i) const { return cycle || (i >= 0 && i < n); }
};

// path, or cycle of length >= 6; throws otherwise
BirthDeathLayout birth_death_layout(const MarkovChain& c);
Real birth_death_be(const MarkovChain& c, int x);

struct OrcResult {
  Real value = 0;
  std::optional<Real> dual;
  TransportPlan plan;
};

OrcResult ollivier_ricci(const MarkovChain& c, int x, int y, bool with_dual = true);
OrcResult ollivier_ricci(const MarkovChain& c, const DistanceMatrix& d, int x, int y, bool with_dual = true);
// inf over 1-Lipschitz f with f(y) - f(x) = 1 of Delta f(x) - Delta f(y)
Real ollivier_ricci_dual(const MarkovChain& c, const DistanceMatrix& d, int x, int y);
Real birth_death_orc(const MarkovChain& c, int n);
Real ollivier_sectional(const MarkovChain& c, int x, int y);
Real ollivier_sectional(const MarkovChain& c, const DistanceMatrix& d, int x, int y);
Real bernoulli_laplace_orc_bound(int L, int N, const std::vector<Real>& lambda);

}  // namespace curvlab
