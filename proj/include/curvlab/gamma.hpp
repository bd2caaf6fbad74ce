#pragma once

#include <utility>

#include "curvlab/chain.hpp"
#include "curvlab/means.hpp"

namespace curvlab {

struct Density {
  Vector values;
  bool normalized = false;

  static Density uniform(int n) { return Density{Vector::Ones(n), false}; }
  static Density from_log(const Vector& u);
  int size() const { return static_cast<int>(values.size()); }
  Real operator()(int x) const { return values(x); }
};

void require_positive(const Density& rho, int n);
// rescale so that <rho,1>_pi = 1
Density normalize(const MarkovChain& c, const Density& rho);

enum class ARoute { edge_sum, gamma };
enum class BRoute { gamma2, laplacian_split, vector_field };

// rho-hat on ordered neighbor pairs (symmetric, zero elsewhere)
Matrix rho_hat(const MarkovChain& c, const Mean& m, const Density& rho);

Vector delta_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f);
Vector gamma_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f, const Vector& g);
Vector gamma2_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f, const Vector& g);

Real A_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f, const Vector& g,
           ARoute route = ARoute::edge_sum);
Real A_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f,
           ARoute route = ARoute::edge_sum);
Real B_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f,
           BRoute route = BRoute::laplacian_split);
// <rho, (Delta f)^2>_pi
Real D_rho(const MarkovChain& c, const Density& rho, const Vector& f);

// ([A]^+, [A]^-) with [A]^+ - [A]^- = A_rho(f, Delta f)
std::pair<Real, Real> A_pm(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f);

Real degeneracy_threshold(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f);
// (B - D/N)/A; N may be kInf. Throws DegenerateWitness when A is below threshold.
Real cd_ratio(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f, Real N);

struct QuadraticFormTriple {
  Matrix A;
  Matrix B;
  Matrix D;
};

QuadraticFormTriple quadratic_forms(const MarkovChain& c, const Mean& m, const Density& rho);

}  // namespace curvlab
