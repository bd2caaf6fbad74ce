#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/types.hpp"

namespace curvlab {

struct Tolerances {
  Real stoch = 1e-9;
  Real rev = 1e-9;
};

struct Edge {
  int x;
  int y;
};

class MarkovChain {
 public:
  MarkovChain() = default;
  MarkovChain(Matrix Q, Vector pi, std::vector<std::string> labels = {});

  int n() const { return static_cast<int>(pi_.size()); }
  const Matrix& Q() const { return Q_; }
  Real Q(int x, int y) const { return Q_(x, y); }
  const Vector& pi() const { return pi_; }
  Real pi(int x) const { return pi_(x); }
  const std::vector<std::string>& labels() const { return labels_; }

  // off-diagonal support, neighbors sorted by index
  const std::vector<int>& neighbors(int x) const { return nbrs_[x]; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool adjacent(int x, int y) const { return x != y && (Q_(x, y) > 0 || Q_(y, x) > 0); }

  Real q_min() const;
  Real laziness() const;
  bool pi_normalized(Real tol = 1e-12) const;
  MarkovChain normalized() const;

 private:
  Matrix Q_;
  Vector pi_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<Edge> edges_;
};

struct Violation {
  std::string kind;
  Real max_residual = 0;
  std::string detail;
};

struct ValidationReport {
  bool accepted = true;
  std::vector<Violation> violations;
};

ValidationReport validate_chain(const MarkovChain& c, const Tolerances& tol = {});
void require_valid(const MarkovChain& c, const Tolerances& tol = {});

struct WeightedEdge {
  int u;
  int v;
  Real w;
};

struct WeightedGraph {
  int n = 0;
  Vector m;
  std::vector<WeightedEdge> edges;
};

ValidationReport validate_graph(const WeightedGraph& g, Real tol = 1e-9);
MarkovChain from_weighted_graph(const WeightedGraph& g);
WeightedGraph to_weighted_graph(const MarkovChain& c, const Tolerances& tol = {});

// Antisymmetric edge function, dense storage, zero off edges.
struct VectorField {
  Matrix V;
};

struct DistanceMatrix {
  int n = 0;
  std::vector<int> d;
  int operator()(int x, int y) const { return d[static_cast<std::size_t>(x) * n + y]; }
  int diameter() const;
};

Vector laplacian(const MarkovChain& c, const Vector& f);
VectorField gradient(const MarkovChain& c, const Vector& f);
DistanceMatrix graph_distance(const MarkovChain& c);
Real spectral_gap(const MarkovChain& c);
Real q_triple(const MarkovChain& c, int x, int y, int z);

// <f,g>_pi with the stored pi
Real inner_pi(const MarkovChain& c, const Vector& f, const Vector& g);
// <V1,V2>_pi = 1/2 sum V1 V2 Q pi
Real inner_pi(const MarkovChain& c, const VectorField& a, const VectorField& b);

// dense I - ... helpers
Matrix laplacian_matrix(const MarkovChain& c);

}  // namespace curvlab
