#pragma once

#include <random>

#include "curvlab/chain.hpp"

namespace curvlab::testing {

// Random connected weighted graph on n vertices; m(x) is at least twice the
// weighted degree so the chain is lazy.
inline MarkovChain random_reversible(int n, std::uint64_t seed, double edge_p = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.1, 1.0);
  std::bernoulli_distribution coin(edge_p);
  Matrix W = Matrix::Zero(n, n);
  for (int x = 1; x < n; ++x) {
    int y = std::uniform_int_distribution<int>(0, x - 1)(rng);
    W(x, y) = W(y, x) = U(rng);
  }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (W(x, y) == 0 && coin(rng)) W(x, y) = W(y, x) = U(rng);
  Vector m(n);
  for (int x = 0; x < n; ++x) m(x) = W.row(x).sum() * (2 + U(rng));
  Matrix Q(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) Q(x, y) = W(x, y) / m(x);
    Q(x, x) = 1 - (Q.row(x).sum() - Q(x, x));
  }
  return MarkovChain(Q, m);
}

// Birth-death chain with Q+(i) + Q-(i) <= 1/2.
inline MarkovChain random_birth_death(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.02, 0.25);
  Matrix Q = Matrix::Zero(n, n);
  Vector pi(n);
  pi(0) = 1;
  for (int i = 0; i + 1 < n; ++i) {
    Q(i, i + 1) = U(rng);
    Q(i + 1, i) = U(rng);
    pi(i + 1) = pi(i) * Q(i, i + 1) / Q(i + 1, i);
  }
  for (int i = 0; i < n; ++i) Q(i, i) = 1 - (Q.row(i).sum() - Q(i, i));
  return MarkovChain(Q, pi);
}

inline Vector random_vector(int n, std::mt19937_64& rng, double scale = 1) {
  std::normal_distribution<double> g(0, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

}  // namespace curvlab::testing
