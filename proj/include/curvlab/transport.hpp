#pragma once

#include <vector>

#include "curvlab/chain.hpp"

namespace curvlab {

struct TransportPlan {
  Matrix gamma;  // n x n coupling
  Real cost = 0;
  int bottleneck = 0;
};

struct W1Result {
  Real cost = 0;
  TransportPlan plan;
  // potentials on the state set with u(a) + v(b) <= d(a,b) and sum mu u + sum nu v = cost
  Vector u;
  Vector v;
};

// Exact transportation simplex; integer costs from d.
W1Result w1(const Vector& mu, const Vector& nu, const DistanceMatrix& d);
int w_inf(const Vector& mu, const Vector& nu, const DistanceMatrix& d);

struct LpResult {
  Real value = 0;
  Vector x;
  bool optimal = false;
};

// max c^T x subject to A x <= b, x >= 0, with b >= 0 (origin feasible)
LpResult solve_lp_max(const Vector& c, const Matrix& A, const Vector& b);

}  // namespace curvlab
