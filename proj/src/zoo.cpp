#include "curvlab/zoo.hpp"

#include <algorithm>
#include <iterator>
#include <cmath>
#include <numeric>
#include <sstream>

namespace curvlab {

namespace {

std::string fmt(Real v) {
  std::ostringstream os;
  os.precision(17);
  os << static_cast<double>(v);
  return os.str();
}

MarkovChain cayley_chain(const CayleyStructure& cs) {
  const int n = cs.group_size();
  Matrix Q = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < cs.gens.size(); ++j) Q(x, cs.apply(x, static_cast<int>(j))) += cs.rates[j];
    Q(x, x) = 1 - (Q.row(x).sum() - Q(x, x));
  }
  return MarkovChain(std::move(Q), Vector::Ones(n));
}

// Gaussian-type log density on a cycle of length len, centred at state 0
Vector cycle_gaussian(int len) {
  Real m = Real(len) / 4;
  Vector u(len);
  for (int i = 0; i < len; ++i) {
    int x = i <= len / 2 ? i : i - len;
    Real t = x / m;
    u(i) = -4 * t * t * std::log(m);
  }
  return u;
}

}  // namespace

ZooChain cycle(int n, Real q) {
  if (n < 3) throw InputError("cycle: n must be >= 3");
  if (!(q > 0 && 2 * q <= 1)) throw InputError("cycle: need 0 < q <= 1/2");
  ZooChain z;
  z.family = "cycle";
  z.params = {{"n", std::to_string(n)}, {"q", fmt(q)}};
  z.cayley = make_cayley({n}, {{1}}, {q});
  z.chain = cayley_chain(*z.cayley);
  if (n >= 8) z.seeds.push_back(cycle_gaussian(n));
  return z;
}

ZooChain hypercube(int d, Real q_edge) {
  if (d < 1) throw InputError("hypercube: d must be >= 1");
  if (!(q_edge > 0 && d * q_edge <= 1 + 1e-15L)) throw InputError("hypercube: need 0 < d q_edge <= 1");
  std::vector<std::vector<int>> gens;
  for (int i = 0; i < d; ++i) {
    std::vector<int> g(d, 0);
    g[i] = 1;
    gens.push_back(g);
  }
  ZooChain z;
  z.family = "hypercube";
  z.params = {{"d", std::to_string(d)}, {"q_edge", fmt(q_edge)}};
  z.cayley = make_cayley(std::vector<int>(d, 2), gens, std::vector<Real>(d, q_edge));
  z.chain = cayley_chain(*z.cayley);
  return z;
}

ZooChain abelian_cayley(const std::vector<int>& orders, const std::vector<std::vector<int>>& gens,
                        const std::vector<Real>& rates) {
  ZooChain z;
  z.family = "abelian_cayley";
  z.cayley = make_cayley(orders, gens, rates);
  z.chain = cayley_chain(*z.cayley);
  require_valid(z.chain);
  std::ostringstream os;
  for (std::size_t i = 0; i < orders.size(); ++i) os << (i ? "x" : "") << orders[i];
  z.params = {{"orders", os.str()}, {"generators", std::to_string(z.cayley->gens.size())}};
  return z;
}

ZooChain birth_death(const std::vector<Real>& Qplus, const std::vector<Real>& Qminus) {
  const int n = static_cast<int>(Qplus.size());
  if (n < 1 || static_cast<int>(Qminus.size()) != n) throw InputError("birth_death: rate lists must match");
  if (Qminus[0] != 0 || Qplus[n - 1] != 0) throw InputError("birth_death: boundary rates must vanish");
  Matrix Q = Matrix::Zero(n, n);
  Vector pi(n);
  pi(0) = 1;
  for (int i = 0; i < n; ++i) {
    if (Qplus[i] < 0 || Qminus[i] < 0 || Qplus[i] + Qminus[i] > 1 + 1e-15L)
      throw InputError("birth_death: invalid rates at state " + std::to_string(i));
    if (i + 1 < n) {
      if (!(Qplus[i] > 0 && Qminus[i + 1] > 0)) throw InputError("birth_death: rates must be positive inside");
      Q(i, i + 1) = Qplus[i];
      Q(i + 1, i) = Qminus[i + 1];
      pi(i + 1) = pi(i) * Qplus[i] / Qminus[i + 1];
    }
    Q(i, i) = 1 - Qplus[i] - Qminus[i];
  }
  ZooChain z;
  z.family = "birth_death";
  z.params = {{"n", std::to_string(n)}};
  z.chain = MarkovChain(std::move(Q), std::move(pi));
  return z;
}

ThreePoint three_point(Real alpha) {
  if (!(alpha > 1)) throw InputError("three_point: alpha must exceed 1");
  const Real a2 = alpha * alpha;
  const Real eps = 0.84L * a2 * std::exp(-a2);
  if (!(eps < 0.5L)) throw InputError("three_point: alpha too small");
  Matrix Q(3, 3);
  Q << 0.72L, 0.28L, 0,
       0.1L, 0.6L, 0.3L,
       0, eps, 1 - eps;
  Vector pi(3);
  pi << 1, 2.8L, std::exp(a2) / a2;
  ThreePoint t;
  t.alpha = alpha;
  t.epsilon = eps;
  t.zc.family = "three_point";
  t.zc.params = {{"alpha", fmt(alpha)}};
  t.zc.chain = MarkovChain(std::move(Q), std::move(pi), {"x", "y", "z"});
  t.rho = Density{Vector(3), false};
  t.rho.values << 1, 1, std::exp(-a2);
  t.f = Vector(3);
  t.f << 0, 1, alpha + 1;
  t.zc.seeds.push_back(t.rho.values.array().log().matrix());
  return t;
}

ZooChain perturbed_c6(Real q, Real eps) {
  if (!(q > 0 && q < 0.25L)) throw InputError("perturbed_c6: need 0 < q < 1/4");
  if (!(eps >= 0 && q + eps <= 0.5L)) throw InputError("perturbed_c6: need 0 <= eps and q + eps <= 1/2");
  Matrix Q = Matrix::Zero(6, 6);
  for (int x = 0; x < 6; ++x) {
    Q(x, (x + 1) % 6) = q;
    Q(x, (x + 5) % 6) = q;
  }
  // uniform pi forces the reverse rate on the perturbed edge
  Q(0, 5) = Q(5, 0) = q + eps;
  for (int x = 0; x < 6; ++x) Q(x, x) = 1 - (Q.row(x).sum() - Q(x, x));
  ZooChain z;
  z.family = "perturbed_c6";
  z.params = {{"q", fmt(q)}, {"eps", fmt(eps)}};
  z.chain = MarkovChain(std::move(Q), Vector::Ones(6));
  if (!validate_chain(z.chain).accepted) throw InputError("perturbed_c6: invalid chain");
  return z;
}

Prism prism(const MarkovChain& base, Real r1, Real r2, Real q) {
  require_valid(base);
  if (!(r1 > r2 && r2 > 0)) throw InputError("prism: need r1 > r2 > 0");
  if (!(q > 0 && r1 + q <= 1 + 1e-15L)) throw InputError("prism: need q > 0 and r1 + q <= 1");
  const int n = base.n();
  Prism p;
  p.base = base;
  p.r1 = r1, p.r2 = r2, p.q = q;
  Matrix Q = Matrix::Zero(2 * n, 2 * n);
  const Real r[2] = {r1, r2};
  for (int k = 0; k < 2; ++k)
    for (int x = 0; x < n; ++x) {
      for (int y : base.neighbors(x)) Q(p.index(x, k), p.index(y, k)) = r[k] * base.Q(x, y);
      Q(p.index(x, k), p.index(x, 1 - k)) = q;
    }
  for (int s = 0; s < 2 * n; ++s) Q(s, s) = 1 - (Q.row(s).sum() - Q(s, s));
  Vector pi(2 * n);
  pi << base.pi(), base.pi();
  p.zc.family = "prism";
  p.zc.params = {{"base_n", std::to_string(n)}, {"r1", fmt(r1)}, {"r2", fmt(r2)}, {"q", fmt(q)}};
  p.zc.chain = MarkovChain(std::move(Q), std::move(pi));
  Vector up(2 * n);
  up << Vector::Constant(n, std::log(Real(2))), Vector::Zero(n);
  p.zc.seeds.push_back(up);
  p.zc.seeds.push_back(-up);
  return p;
}

std::pair<Density, Vector> prism_witness(const Prism& p, Real rho1, Real rho2, const Vector& psi0) {
  const int n = p.base.n();
  if (psi0.size() != n) throw InputError("prism_witness: psi0 has wrong length");
  if (!(rho1 > 0 && rho2 > 0)) throw InputError("prism_witness: layer densities must be positive");
  Density rho{Vector(2 * n), false};
  Vector f(2 * n);
  for (int x = 0; x < n; ++x) {
    rho.values(p.index(x, 0)) = rho1;
    rho.values(p.index(x, 1)) = rho2;
    f(p.index(x, 0)) = f(p.index(x, 1)) = psi0(x);
  }
  return {rho, f};
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long long subset_rank(const std::vector<int>& s) {
  long long r = 0;
  for (std::size_t i = 0; i < s.size(); ++i) r += binomial(s[i], static_cast<int>(i) + 1);
  return r;
}

std::vector<int> subset_unrank(long long rank, int N) {
  std::vector<int> s(N);
  for (int i = N; i >= 1; --i) {
    int c = i - 1;
    while (binomial(c + 1, i) <= rank) ++c;
    s[i - 1] = c;
    rank -= binomial(c, i);
  }
  return s;
}

BernoulliLaplace bernoulli_laplace(int L, int N, const std::vector<Real>& lambda, std::optional<Real> rate_scale) {
  if (N < 1 || N > L - 1) throw InputError("bernoulli_laplace: need 1 <= N <= L-1");
  if (L > 16) throw InputError("bernoulli_laplace: L too large");
  if (static_cast<int>(lambda.size()) != L) throw InputError("bernoulli_laplace: need L intensities");
  for (Real l : lambda)
    if (!(l >= 0)) throw InputError("bernoulli_laplace: intensities must be nonnegative");
  BernoulliLaplace b;
  b.L = L, b.N = N, b.lambda = lambda;
  const long long S = binomial(L, N);
  for (long long r = 0; r < S; ++r) b.subsets.push_back(subset_unrank(r, N));
  Real outflow = 0;
  for (const auto& s : b.subsets) {
    Real tot = 0;
    for (int j : s) tot += lambda[j] * (L - N) / L;
    outflow = std::max(outflow, tot);
  }
  b.rate_scale = rate_scale ? *rate_scale : (outflow > 0.5L ? 0.5L / outflow : Real(1));
  if (!(b.rate_scale > 0)) throw InputError("bernoulli_laplace: rate scale must be positive");
  if (b.rate_scale * outflow > 0.5L + 1e-12L) throw InputError("bernoulli_laplace: laziness violated");

  const int n = static_cast<int>(S);
  Matrix Q = Matrix::Zero(n, n);
  Vector logpi = Vector::Zero(n);
  b.reversible = std::all_of(lambda.begin(), lambda.end(), [](Real l) { return l > 0; });
  for (int x = 0; x < n; ++x) {
    const auto& s = b.subsets[x];
    std::vector<char> occ(L, 0);
    for (int j : s) occ[j] = 1;
    if (b.reversible)
      for (int j : s) logpi(x) -= std::log(lambda[j]);
    for (std::size_t a = 0; a < s.size(); ++a)
      for (int k = 0; k < L; ++k) {
        if (occ[k]) continue;
        std::vector<int> t = s;
        t[a] = k;
        std::sort(t.begin(), t.end());
        Q(x, static_cast<int>(subset_rank(t))) = b.rate_scale * lambda[s[a]] / L;
      }
    Q(x, x) = 1 - (Q.row(x).sum() - Q(x, x));
  }
  // pi(x) proportional to prod_{j in x} 1/lambda_j; undefined when an intensity vanishes
  Vector pi = (logpi.array() - logpi.maxCoeff()).exp().matrix();
  std::vector<std::string> labels;
  for (const auto& s : b.subsets) {
    std::string l;
    for (int j : s) l += (l.empty() ? "" : ",") + std::to_string(j + 1);
    labels.push_back("{" + l + "}");
  }
  b.zc.family = "bernoulli_laplace";
  std::ostringstream os;
  for (int i = 0; i < L; ++i) os << (i ? "," : "") << fmt(lambda[i]);
  b.zc.params = {{"L", std::to_string(L)}, {"N", std::to_string(N)}, {"lambda", os.str()},
                 {"rate_scale", fmt(b.rate_scale)}};
  b.zc.chain = MarkovChain(std::move(Q), std::move(pi), std::move(labels));
  return b;
}

DistanceMatrix BernoulliLaplace::johnson_distance() const {
  const int n = static_cast<int>(subsets.size());
  DistanceMatrix d{n, std::vector<int>(static_cast<std::size_t>(n) * n)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> common;
      std::set_intersection(subsets[a].begin(), subsets[a].end(), subsets[b].begin(), subsets[b].end(),
                            std::back_inserter(common));
      d.d[static_cast<std::size_t>(a) * n + b] = N - static_cast<int>(common.size());
    }
  return d;
}

std::vector<Edge> BernoulliLaplace::johnson_edges() const {
  const DistanceMatrix d = johnson_distance();
  std::vector<Edge> e;
  for (int a = 0; a < d.n; ++a)
    for (int b = a + 1; b < d.n; ++b)
      if (d(a, b) == 1) e.push_back({a, b});
  return e;
}

WeightedGraph simple_random_walk(int n, const std::vector<std::pair<int, int>>& edges) {
  WeightedGraph g;
  g.n = n;
  g.m = Vector::Zero(n);
  for (auto [u, v] : edges) {
    g.edges.push_back({u, v, 1});
    g.m(u) += 1;
    g.m(v) += 1;
  }
  return g;
}

WeightedGraph complement_c4_c5() {
  // C4 on 0..3, C5 on 4..8
  auto in_base = [](int a, int b) {
    if (a > b) std::swap(a, b);
    if (b < 4) return (b - a == 1) || (a == 0 && b == 3);
    if (a >= 4) return (b - a == 1) || (a == 4 && b == 8);
    return false;
  };
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b)
      if (!in_base(a, b)) edges.push_back({a, b});
  return simple_random_walk(9, edges);
}

}  // namespace curvlab
