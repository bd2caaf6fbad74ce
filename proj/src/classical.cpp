#include "curvlab/classical.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include <Eigen/Eigenvalues>

namespace curvlab {

namespace {

Real min_eig(const Matrix& M) {
  if (M.rows() == 0) return kInf;
  Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void add_outer(Matrix& M, Real coef, const Vector& a, const Vector& b) {
  M += 0.5L * coef * (a * b.transpose() + b * a.transpose());
}

}  // namespace

namespace {

Real gap_or_two(const MarkovChain& c) {
  try {
    return spectral_gap(c);
  } catch (const InputError&) {
    return 2;
  }
}

BakryEmeryResult be_local(const MarkovChain& c, int x, Real N, Real lambda1) {
  if (x < 0 || x >= c.n()) throw InputError("bakry_emery_local: vertex out of range");
  if (!(N > 0)) throw InputError("bakry_emery_local: N must be positive");
  // local coordinates: x, sphere 1, sphere 2
  std::vector<int> order{x};
  std::map<int, int> loc{{x, 0}};
  for (int y : c.neighbors(x)) loc[y] = static_cast<int>(order.size()), order.push_back(y);
  const int d1 = static_cast<int>(order.size()) - 1;
  std::vector<int> s2;
  for (int i = 1; i <= d1; ++i)
    for (int z : c.neighbors(order[i]))
      if (!loc.count(z)) loc[z] = -1, s2.push_back(z);
  std::sort(s2.begin(), s2.end());
  for (int z : s2) loc[z] = static_cast<int>(order.size()), order.push_back(z);
  const int l = static_cast<int>(order.size());

  auto e = [&](int v) {
    Vector u = Vector::Zero(l);
    u(loc.at(v)) = 1;
    return u;
  };
  auto gamma_form = [&](int v) {
    Matrix G = Matrix::Zero(l, l);
    for (int z : c.neighbors(v)) {
      Vector u = e(z) - e(v);
      G += 0.5L * c.Q(v, z) * u * u.transpose();
    }
    return G;
  };
  auto lap = [&](int v) {
    Vector w = Vector::Zero(l);
    for (int z : c.neighbors(v)) w += c.Q(v, z) * (e(z) - e(v));
    return w;
  };

  Matrix Gx = gamma_form(x);
  Vector lx = lap(x);
  Matrix G2 = Matrix::Zero(l, l);
  for (int y : c.neighbors(x)) {
    G2 += 0.5L * c.Q(x, y) * (gamma_form(y) - Gx);
    add_outer(G2, -0.5L * c.Q(x, y), e(y) - e(x), lap(y) - lx);
  }
  Matrix M = G2;
  if (!std::isinf(N)) M -= lx * lx.transpose() / N;

  // drop f(x); split a = sphere 1, b = sphere 2
  const int nb = l - 1 - d1;
  Matrix Maa = M.block(1, 1, d1, d1), Mab = M.block(1, 1 + d1, d1, nb), Mbb = M.block(1 + d1, 1 + d1, nb, nb);
  Matrix Gaa = Gx.block(1, 1, d1, d1);

  BakryEmeryResult res;
  res.x = x;
  res.N = N;
  const Real scale = std::max(Real(1e-300), M.cwiseAbs().maxCoeff());
  const Real cut = 1e-11L * scale;

  // K-independent part: the form must be PSD on functions vanishing on sphere 1
  Matrix Pbb = Matrix::Zero(nb, nb);
  if (nb > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> eb(Mbb);
    for (int i = 0; i < nb; ++i) {
      Real lam = eb.eigenvalues()(i);
      Vector v = eb.eigenvectors().col(i);
      if (lam < -cut) {
        res.K = -kInf;
        return res;
      }
      if (lam > cut) Pbb += v * v.transpose() / lam;
      else if ((Mab * v).norm() > std::sqrt(cut) * std::sqrt(scale)) {
        res.K = -kInf;
        return res;
      }
    }
  }
  Matrix S = Maa - Mab * Pbb * Mab.transpose();
  S = 0.5L * (S + S.transpose());
  if (d1 == 0) {
    res.K = kInf;
    return res;
  }

  auto psd = [&](Real K) { return min_eig(S - K * Gaa) >= -1e-11L * std::max(Real(1e-300), S.cwiseAbs().maxCoeff() + std::abs(K) * Gaa.cwiseAbs().maxCoeff()); };
  Real lo = -(0.5L + 4 / c.q_min()) - 1;
  Real hi = lambda1 + 1;
  while (!psd(lo)) lo = 2 * lo - 1;
  while (psd(hi)) hi = 2 * hi + 1;
  while (hi - lo > 1e-9L) {
    Real mid = 0.5L * (lo + hi);
    if (psd(mid)) lo = mid;
    else hi = mid;
  }
  res.K = lo;
  // Gaa is diagonal; when it is positive the bracket is polished by the generalized eigenvalue
  const Vector gd = Gaa.diagonal();
  if (gd.minCoeff() > 0) {
    const Vector is = gd.cwiseSqrt().cwiseInverse();
    const Real k = min_eig(is.asDiagonal() * S * is.asDiagonal());
    if (k >= lo - 1e-8L && k <= hi + 1e-8L) res.K = k;
  }

  Eigen::SelfAdjointEigenSolver<Matrix> ev(S - (res.K + 1e-7L) * Gaa);
  Vector a = ev.eigenvectors().col(0);
  Vector b = nb > 0 ? Vector(-Pbb * Mab.transpose() * a) : Vector();
  res.certificate = Vector::Zero(c.n());
  for (int i = 0; i < d1; ++i) res.certificate(order[1 + i]) = a(i);
  for (int i = 0; i < nb; ++i) res.certificate(order[1 + d1 + i]) = b(i);
  return res;
}

}  // namespace

BakryEmeryResult bakry_emery_local(const MarkovChain& c, int x, Real N) { return be_local(c, x, N, gap_or_two(c)); }

std::vector<Real> bakry_emery_per_vertex(const MarkovChain& c, Real N) {
  std::vector<Real> out(c.n());
  Real gap = gap_or_two(c);
  for (int x = 0; x < c.n(); ++x) out[x] = be_local(c, x, N, gap).K;
  return out;
}

Real bakry_emery_global(const MarkovChain& c, Real N) {
  auto v = bakry_emery_per_vertex(c, N);
  return *std::min_element(v.begin(), v.end());
}

BirthDeathLayout birth_death_layout(const MarkovChain& c) {
  const int n = c.n();
  BirthDeathLayout path{false, n}, cyc{true, n};
  bool is_path = true, is_cycle = n >= 6;
  for (int i = 0; i < n; ++i)
    for (int j : c.neighbors(i)) {
      int gap = std::abs(i - j);
      if (gap > 1) is_path = false;
      if (gap != 1 && gap != n - 1) is_cycle = false;
    }
  if (is_path) return path;
  if (is_cycle) return cyc;
  throw InputError("chain is not birth-death (path or cycle of length >= 6)");
}

Real birth_death_be(const MarkovChain& c, int x) {
  auto lay = birth_death_layout(c);
  auto Qp = [&](int i) { return lay.has(i) && lay.has(lay.next(i)) ? c.Q(i, lay.next(i)) : Real(0); };
  auto Qm = [&](int i) { return lay.has(i) && lay.has(lay.prev(i)) ? c.Q(i, lay.prev(i)) : Real(0); };
  const bool left = lay.has(lay.prev(x)), right = lay.has(lay.next(x));
  auto Wm = [&] { return -Qm(lay.prev(x)) + 3 * Qp(lay.prev(x)) + Qm(x) - Qp(x); };
  auto Wp = [&] { return -Qp(lay.next(x)) + 3 * Qm(lay.next(x)) + Qp(x) - Qm(x); };
  if (!left && !right) return kInf;
  if (!left) return 0.5L * Wp();
  if (!right) return 0.5L * Wm();
  Real wm = Wm(), wp = Wp(), P = 4 * Qm(x) * Qp(x);
  // largest u = 2K with u <= W- and (W- - u)(W+ - u) >= P
  Real disc = std::sqrt((wm - wp) * (wm - wp) + 4 * P);
  Real u = 0.5L * (wm + wp - disc);
  if (P == 0 && wm >= wp) u = wm;
  return 0.5L * u;
}

OrcResult ollivier_ricci(const MarkovChain& c, int x, int y, bool with_dual) {
  return ollivier_ricci(c, graph_distance(c), x, y, with_dual);
}

OrcResult ollivier_ricci(const MarkovChain& c, const DistanceMatrix& d, int x, int y, bool with_dual) {
  if (d(x, y) != 1) throw InputError("ollivier_ricci: vertices are not adjacent");
  Vector mu = c.Q().row(x).transpose(), nu = c.Q().row(y).transpose();
  W1Result w = w1(mu, nu, d);
  OrcResult r;
  r.value = 1 - w.cost;
  r.plan = w.plan;
  if (with_dual) r.dual = ollivier_ricci_dual(c, d, x, y);
  return r;
}

Real ollivier_ricci_dual(const MarkovChain& c, const DistanceMatrix& d, int x, int y) {
  if (d(x, y) != 1) throw InputError("ollivier_ricci_dual: vertices are not adjacent");
  std::vector<int> T;
  for (int z = 0; z < c.n(); ++z)
    if (z != x && z != y && (c.Q(x, z) > 0 || c.Q(y, z) > 0)) T.push_back(z);
  const int nv = static_cast<int>(T.size());
  // g(z) = d(x,z) - f(z) >= 0 with f(x) = 0, f(y) = 1
  auto diff = [&](int z) { return c.Q(x, z) - c.Q(y, z); };
  Real cst = 1 + diff(y) * d(x, y);
  Vector obj(nv);
  for (int i = 0; i < nv; ++i) {
    cst += diff(T[i]) * d(x, T[i]);
    obj(i) = diff(T[i]);
  }
  std::vector<std::pair<std::vector<std::pair<int, Real>>, Real>> rows;
  // f(u) - f(v) <= d(u,v)  <=>  g(v) - g(u) <= d(u,v) - d(x,u) + d(x,v)
  std::vector<int> all{x, y};
  for (int z : T) all.push_back(z);
  auto var = [&](int k) { return k < 2 ? -1 : k - 2; };
  for (int p = 0; p < static_cast<int>(all.size()); ++p)
    for (int q = 0; q < static_cast<int>(all.size()); ++q) {
      if (p == q) continue;
      int u = all[p], v = all[q];
      Real rhs = d(u, v) - d(x, u) + d(x, v);
      int gu = var(p), gv = var(q);
      if (gv < 0) continue;  // -g(u) <= rhs always holds
      std::vector<std::pair<int, Real>> row{{gv, 1}};
      if (gu >= 0) row.push_back({gu, -1});
      rows.push_back({row, rhs});
    }
  Matrix A = Matrix::Zero(static_cast<int>(rows.size()), nv);
  Vector b(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto [j, v] : rows[i].first) A(static_cast<int>(i), j) = v;
    b(static_cast<int>(i)) = rows[i].second;
  }
  LpResult lp = solve_lp_max(obj, A, b);
  if (!lp.optimal) throw InputError("ollivier_ricci_dual: LP did not converge");
  return cst - lp.value;
}

Real birth_death_orc(const MarkovChain& c, int n) {
  auto lay = birth_death_layout(c);
  if (c.laziness() < 0.5L - 1e-12L) throw InputError("birth_death_orc: requires laziness >= 1/2");
  int m = lay.next(n);
  if (!lay.has(m)) throw InputError("birth_death_orc: no edge (n, n+1)");
  auto Qp = [&](int i) { return lay.has(lay.next(i)) ? c.Q(i, lay.next(i)) : Real(0); };
  auto Qm = [&](int i) { return lay.has(lay.prev(i)) ? c.Q(i, lay.prev(i)) : Real(0); };
  return Qp(n) + Qm(m) - Qp(m) - Qm(n);
}

Real ollivier_sectional(const MarkovChain& c, int x, int y) { return ollivier_sectional(c, graph_distance(c), x, y); }

Real ollivier_sectional(const MarkovChain& c, const DistanceMatrix& d, int x, int y) {
  if (d(x, y) != 1) throw InputError("ollivier_sectional: vertices are not adjacent");
  return 1 - w_inf(c.Q().row(x).transpose(), c.Q().row(y).transpose(), d);
}

Real bernoulli_laplace_orc_bound(int L, int N, const std::vector<Real>& lambda) {
  if (N < 1 || N > L - 1) throw InputError("bernoulli_laplace_orc_bound: need 1 <= N <= L-1");
  if (static_cast<int>(lambda.size()) != L) throw InputError("bernoulli_laplace_orc_bound: need L intensities");
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (lambda[i] < 0 || (i > 0 && lambda[i] < lambda[i - 1]))
      throw InputError("bernoulli_laplace_orc_bound: intensities must be nonnegative and ascending");
  Real s = (L - N - 1) * lambda[0];
  for (int i = 0; i <= N; ++i) s += lambda[i];
  return s / L;
}

}  // namespace curvlab
