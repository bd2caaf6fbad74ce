#include "curvlab/gamma.hpp"

#include <algorithm>
#include <cmath>

namespace curvlab {

Density Density::from_log(const Vector& u) { return Density{u.array().exp().matrix(), false}; }

void require_positive(const Density& rho, int n) {
  if (rho.size() != n) throw InputError("density has wrong length");
  for (int x = 0; x < n; ++x)
    if (!(rho(x) > 0) || !std::isfinite(rho(x))) throw InputError("density must be strictly positive");
}

Density normalize(const MarkovChain& c, const Density& rho) {
  require_positive(rho, c.n());
  Real mass = rho.values.dot(c.pi());
  return Density{rho.values / mass, true};
}

Matrix rho_hat(const MarkovChain& c, const Mean& m, const Density& rho) {
  require_positive(rho, c.n());
  Matrix R = Matrix::Zero(c.n(), c.n());
  for (const auto& e : c.edges()) R(e.x, e.y) = R(e.y, e.x) = m.theta(rho(e.x), rho(e.y));
  return R;
}

Vector delta_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f) {
  require_positive(rho, c.n());
  Vector out(c.n());
  for (int x = 0; x < c.n(); ++x) {
    Real s = 0;
    for (int y : c.neighbors(x)) s += 2 * m.d1(rho(x), rho(y)) * (f(y) - f(x)) * c.Q(x, y);
    out(x) = s;
  }
  return out;
}

Vector gamma_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f, const Vector& g) {
  Vector fg = f.cwiseProduct(g);
  return 0.5L * (delta_rho(c, m, rho, fg) - f.cwiseProduct(delta_rho(c, m, rho, g)) -
                 g.cwiseProduct(delta_rho(c, m, rho, f)));
}

Vector gamma2_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f, const Vector& g) {
  Vector G = gamma_rho(c, m, rho, f, g);
  return 0.5L * (laplacian(c, G) - gamma_rho(c, m, rho, f, laplacian(c, g)) -
                 gamma_rho(c, m, rho, g, laplacian(c, f)));
}

Real A_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f, const Vector& g,
           ARoute route) {
  if (route == ARoute::gamma) return inner_pi(c, rho.values, gamma_rho(c, m, rho, f, g));
  require_positive(rho, c.n());
  Real s = 0;
  for (const auto& e : c.edges()) {
    Real w = 0.5L * (c.Q(e.x, e.y) * c.pi(e.x) + c.Q(e.y, e.x) * c.pi(e.y));
    s += m.theta(rho(e.x), rho(e.y)) * (f(e.y) - f(e.x)) * (g(e.y) - g(e.x)) * w;
  }
  return s;
}

Real A_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f, ARoute route) {
  return A_rho(c, m, rho, f, f, route);
}

Real D_rho(const MarkovChain& c, const Density& rho, const Vector& f) {
  Vector L = laplacian(c, f);
  return inner_pi(c, rho.values, L.cwiseProduct(L));
}

Real B_rho(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f, BRoute route) {
  switch (route) {
    case BRoute::gamma2:
      return inner_pi(c, rho.values, gamma2_rho(c, m, rho, f, f));
    case BRoute::laplacian_split: {
      Vector Lrho = laplacian(c, rho.values);
      return 0.5L * inner_pi(c, Lrho, gamma_rho(c, m, rho, f, f)) - A_rho(c, m, rho, f, laplacian(c, f));
    }
    case BRoute::vector_field: {
      Vector Lrho = laplacian(c, rho.values);
      VectorField gf = gradient(c, f), gLf = gradient(c, laplacian(c, f));
      VectorField a{Matrix::Zero(c.n(), c.n())}, b{Matrix::Zero(c.n(), c.n())};
      for (int x = 0; x < c.n(); ++x)
        for (int y : c.neighbors(x)) {
          Real hat = m.d1(rho(x), rho(y)) * Lrho(x) + m.d2(rho(x), rho(y)) * Lrho(y);
          a.V(x, y) = hat * gf.V(x, y);
          b.V(x, y) = m.theta(rho(x), rho(y)) * gf.V(x, y);
        }
      return 0.5L * inner_pi(c, a, gf) - inner_pi(c, b, gLf);
    }
  }
  return 0;
}

std::pair<Real, Real> A_pm(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f) {
  Matrix R = rho_hat(c, m, rho);
  Real plus = 0, minus = 0;
  for (int y = 0; y < c.n(); ++y)
    for (int x : c.neighbors(y))
      for (int z : c.neighbors(y)) {
        Real t = -0.5L * q_triple(c, x, y, z) * (R(x, y) + R(z, y)) * (f(y) - f(x)) * (f(y) - f(z));
        if (t > 0) plus += t;
        else minus -= t;
      }
  return {plus, minus};
}

Real degeneracy_threshold(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f) {
  Real wmax = 0;
  for (const auto& e : c.edges())
    wmax = std::max(wmax, m.theta(rho(e.x), rho(e.y)) * c.Q(e.x, e.y) * c.pi(e.x));
  return 1e-12L * f.squaredNorm() * wmax;
}

Real cd_ratio(const MarkovChain& c, const Mean& m, const Density& rho, const Vector& f, Real N) {
  Real A = A_rho(c, m, rho, f);
  if (!(A > degeneracy_threshold(c, m, rho, f))) throw DegenerateWitness("cd_ratio: A_rho(f) is numerically zero");
  Real B = B_rho(c, m, rho, f);
  Real D = std::isinf(N) ? Real(0) : D_rho(c, rho, f) / N;
  return (B - D) / A;
}

namespace {

// M += coef * (e_a - e_b)(e_c - e_d)^T symmetrized
inline void add_sym(Matrix& M, Real coef, int a, int b, int cc, int d) {
  Real h = 0.5L * coef;
  M(a, cc) += h; M(a, d) -= h; M(b, cc) -= h; M(b, d) += h;
  M(cc, a) += h; M(d, a) -= h; M(cc, b) -= h; M(d, b) += h;
}

}  // namespace

QuadraticFormTriple quadratic_forms(const MarkovChain& c, const Mean& m, const Density& rho) {
  require_positive(rho, c.n());
  const int n = c.n();
  QuadraticFormTriple t{Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n)};
  Matrix R = Matrix::Zero(n, n), K = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y : c.neighbors(x)) {
      R(x, y) = m.theta(rho(x), rho(y));
      K(x, y) = m.d1(rho(x), rho(y));
    }
  Vector Lrho = laplacian(c, rho.values);

  for (const auto& e : c.edges()) {
    Real w = 0.5L * (c.Q(e.x, e.y) * c.pi(e.x) + c.Q(e.y, e.x) * c.pi(e.y));
    add_sym(t.A, R(e.x, e.y) * w, e.y, e.x, e.y, e.x);
  }
  // 1/2 <Delta rho, Gamma_rho f>_pi
  for (int x = 0; x < n; ++x)
    for (int y : c.neighbors(x)) add_sym(t.B, 0.5L * Lrho(x) * c.pi(x) * K(x, y) * c.Q(x, y), y, x, y, x);
  // -A(f, Delta f) and <rho,(Delta f)^2> as q_xyz triple sums
  for (int y = 0; y < n; ++y)
    for (int x : c.neighbors(y))
      for (int z : c.neighbors(y)) {
        Real q = q_triple(c, x, y, z);
        add_sym(t.B, q * R(x, y), y, x, y, z);
        add_sym(t.D, q * rho(y), y, x, y, z);
      }
  return t;
}

}  // namespace curvlab
