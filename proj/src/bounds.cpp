#include "curvlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace curvlab {

int CayleyStructure::group_size() const {
  int s = 1;
  for (int o : orders) s *= o;
  return s;
}

int CayleyStructure::index(const std::vector<int>& g) const {
  int idx = 0;
  for (std::size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + ((g[i] % orders[i]) + orders[i]) % orders[i];
  return idx;
}

std::vector<int> CayleyStructure::element(int idx) const {
  std::vector<int> g(orders.size());
  for (int i = static_cast<int>(orders.size()) - 1; i >= 0; --i) {
    g[i] = idx % orders[i];
    idx /= orders[i];
  }
  return g;
}

int CayleyStructure::apply(int idx, int gen) const {
  auto g = element(idx);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += gens[gen][i];
  return index(g);
}

int CayleyStructure::element_order(const std::vector<int>& g) const {
  int o = 1;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    int gi = ((g[i] % orders[i]) + orders[i]) % orders[i];
    o = std::lcm(o, orders[i] / std::gcd(gi, orders[i]));
  }
  return o;
}

int CayleyStructure::inverse(int gen) const {
  std::vector<int> inv(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) inv[i] = -gens[gen][i];
  int target = index(inv);
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (index(gens[j]) == target) return static_cast<int>(j);
  return -1;
}

int CayleyStructure::r() const {
  int r = 0;
  for (std::size_t j = 0; j < gens.size(); ++j) r = std::max(r, generator_order(static_cast<int>(j)));
  return r;
}

std::vector<int> CayleyStructure::order_two() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (generator_order(static_cast<int>(j)) == 2) out.push_back(static_cast<int>(j));
  return out;
}

Real CayleyStructure::q_min() const { return *std::min_element(rates.begin(), rates.end()); }

CayleyStructure make_cayley(std::vector<int> orders, std::vector<std::vector<int>> gens, std::vector<Real> rates) {
  if (orders.empty()) throw InputError("cayley: empty group");
  for (int o : orders)
    if (o < 1) throw InputError("cayley: cyclic factor orders must be positive");
  if (gens.size() != rates.size()) throw InputError("cayley: one rate per generator required");
  CayleyStructure cs{std::move(orders), {}, {}};
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].size() != cs.orders.size()) throw InputError("cayley: generator has wrong arity");
    if (!(rates[j] > 0)) throw InputError("cayley: rates must be positive");
    if (cs.element_order(gens[j]) == 1) throw InputError("cayley: identity generator");
    int idx = cs.index(gens[j]);
    bool dup = false;
    for (std::size_t k = 0; k < cs.gens.size(); ++k)
      if (cs.index(cs.gens[k]) == idx) {
        if (std::abs(cs.rates[k] - rates[j]) > 1e-15L * rates[j]) throw InputError("cayley: rate asymmetry");
        dup = true;
      }
    if (dup) continue;
    std::vector<int> g(cs.orders.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = ((gens[j][i] % cs.orders[i]) + cs.orders[i]) % cs.orders[i];
    cs.gens.push_back(g);
    cs.rates.push_back(rates[j]);
  }
  // close under inverses
  for (std::size_t j = 0, m = cs.gens.size(); j < m; ++j) {
    int k = cs.inverse(static_cast<int>(j));
    if (k >= 0) {
      if (std::abs(cs.rates[k] - cs.rates[j]) > 1e-15L * cs.rates[j]) throw InputError("cayley: rate asymmetry");
      continue;
    }
    std::vector<int> inv(cs.orders.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = (cs.orders[i] - cs.gens[j][i]) % cs.orders[i];
    cs.gens.push_back(inv);
    cs.rates.push_back(cs.rates[j]);
  }
  Real total = std::accumulate(cs.rates.begin(), cs.rates.end(), Real(0));
  if (total > 1 + 1e-12L) throw InputError("cayley: rates sum exceeds 1");
  return cs;
}

void verify_cayley(const MarkovChain& c, const CayleyStructure& cs, Real tol) {
  if (c.n() != cs.group_size()) throw InputError("cayley: state count differs from group order");
  for (std::size_t j = 0; j < cs.gens.size(); ++j) {
    int inv = cs.inverse(static_cast<int>(j));
    if (inv < 0) throw InputError("cayley: generator set not symmetric");
    if (std::abs(cs.rates[inv] - cs.rates[j]) > tol) throw InputError("cayley: rate asymmetry");
  }
  for (int x = 0; x < c.n(); ++x) {
    std::vector<int> nb;
    for (std::size_t j = 0; j < cs.gens.size(); ++j) {
      int y = cs.apply(x, static_cast<int>(j));
      if (std::abs(c.Q(x, y) - cs.rates[j]) > tol) throw InputError("cayley: orbit rate mismatch");
      nb.push_back(y);
    }
    std::sort(nb.begin(), nb.end());
    if (nb != c.neighbors(x)) throw InputError("cayley: support is not the Cayley graph");
  }
}

std::vector<CDPair> cayley_lower_bounds(const CayleyStructure& cs) {
  const Real S = static_cast<Real>(cs.gens.size());
  const Real S2 = static_cast<Real>(cs.order_two().size());
  const Real r = cs.r();
  const Real qmin = cs.q_min();
  const Real r4 = r * r * r * r;
  return {
      {qmin / (50 * r4), kInf, "qmin/(50 r^4), N=inf"},
      {0, S - 0.07L * (S - S2), "K=0, N=|S|-0.07|S\\S2|"},
      {qmin / (100 * r4), 2 * S - 0.14L * (S - S2), "qmin/(100 r^4), N=2|S|-0.14|S\\S2|"},
  };
}

Real cycle_upper_bound(int n, Real q) {
  if (n < 4) throw InputError("cycle_upper_bound: n must be >= 4");
  if (!(q > 0 && q <= 0.5L)) throw InputError("cycle_upper_bound: q must lie in (0, 1/2]");
  Real l = std::log(Real(n));
  return 5000 * q * l * l / (Real(n) * n * n * n);
}

CycleWitness cycle_witness(int n) {
  if (n < 4) throw InputError("cycle_witness: n must be >= 4");
  const int len = 4 * n;
  CycleWitness w{Density{Vector(len), false}, Vector(len), std::vector<int>(len)};
  const Real ln = std::log(Real(n));
  for (int x = -2 * n + 1; x <= 2 * n; ++x) {
    int idx = ((x % len) + len) % len;
    Real t = Real(x) / n;
    w.rho.values(idx) = std::exp(-4 * t * t * ln);
    Real fx;
    if (x >= -n && x <= n) fx = x;
    else if (x > n) fx = 2 * n - x;
    else fx = -2 * n - x;
    w.f(idx) = fx;
    w.coordinate[idx] = x;
  }
  return w;
}

Real universal_lower(Real q_min) {
  if (!(q_min > 0 && q_min <= 1)) throw InputError("universal_lower: Q_min must lie in (0,1]");
  return -(0.5L + 2 / q_min);
}

Real universal_lower_findim(Real q_min, Real N) {
  if (!(q_min > 0 && q_min <= 1)) throw InputError("universal_lower_findim: Q_min must lie in (0,1]");
  if (!(N > 0)) throw InputError("universal_lower_findim: N must be positive");
  Real inv = std::isinf(N) ? Real(0) : 1 / (N * N);
  return -(0.5L + (4 / q_min) * (1 + 4 * inv));
}

namespace {

Matrix dense_weights(const WeightedGraph& g) {
  Matrix W = Matrix::Zero(g.n, g.n);
  for (const auto& e : g.edges) W(e.u, e.v) = W(e.v, e.u) = e.w;
  return W;
}

Real graph_qmin(const WeightedGraph& g) {
  Real q = kInf;
  for (const auto& e : g.edges) q = std::min({q, e.w / g.m(e.u), e.w / g.m(e.v)});
  return q;
}

}  // namespace

PerturbationBound perturbation_bound(const WeightedGraph& g, const WeightedGraph& gt) {
  if (g.n != gt.n) throw InputError("perturbation_bound: topology mismatch");
  Matrix W = dense_weights(g), Wt = dense_weights(gt);
  PerturbationBound out;
  Real big = std::max(g.m.maxCoeff(), gt.m.maxCoeff());
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y) {
      if ((W(x, y) > 0) != (Wt(x, y) > 0)) throw InputError("perturbation_bound: topology mismatch");
      if (W(x, y) > 0) {
        out.epsilon = std::max(out.epsilon, std::abs(std::log(Wt(x, y) / W(x, y))));
        big = std::max({big, W(x, y), Wt(x, y)});
      }
    }
  for (int x = 0; x < g.n; ++x) out.epsilon = std::max(out.epsilon, std::abs(std::log(gt.m(x) / g.m(x))));
  // joint rescaling into the unit box leaves epsilon and Q_min unchanged
  out.scale = big > 1 ? 1 / big : Real(1);
  out.q_min = std::min(graph_qmin(g), graph_qmin(gt));
  out.bound = 27 * out.epsilon * (1 + 8 / out.q_min);
  return out;
}

PerturbationBound perturbation_bound(const MarkovChain& c, const MarkovChain& ct) {
  return perturbation_bound(to_weighted_graph(c), to_weighted_graph(ct));
}

Real delta_perturbation_bound(Real eps, Real q_min) {
  const Real hi = std::asinh(Real(1) / 3) / 4;
  if (!(eps > 0 && eps < hi)) throw InputError("delta_perturbation_bound: epsilon out of range");
  if (!(q_min > 0)) throw InputError("delta_perturbation_bound: Q_min must be positive");
  return std::sinh(4 * eps) * (17 + 36 / q_min);
}

Real lichnerowicz_upper(const MarkovChain& c) { return spectral_gap(c); }

TDecomposition t_decomposition(const MarkovChain& c, const CayleyStructure& cs, const Mean& m,
                               const Density& rho, const Vector& f) {
  verify_cayley(c, cs);
  require_positive(rho, c.n());
  const Real pi0 = c.pi(0);
  for (int x = 0; x < c.n(); ++x)
    if (std::abs(c.pi(x) - pi0) > 1e-12L * pi0) throw InputError("t_decomposition: pi must be uniform");
  const int S = static_cast<int>(cs.gens.size());
  auto grad = [&](int d, int x) { return f(cs.apply(x, d)) - f(x); };
  TDecomposition t;
  for (int x = 0; x < c.n(); ++x)
    for (int d = 0; d < S; ++d) {
      int dx = cs.apply(x, d);
      Real hat = m.theta(rho(x), rho(dx));
      for (int e = 0; e < S; ++e) {
        int ex = cs.apply(x, e);
        int dex = cs.apply(ex, d);
        Real w = cs.rates[d] * cs.rates[e] * pi0 / 4;
        Real diff = grad(d, ex) - grad(d, x);
        t.T13 += diff * diff * hat * w;
        Real bracket = m.d1(rho(ex), rho(dex)) * rho(x) + m.d2(rho(ex), rho(dex)) * rho(dx) - hat;
        Real g = grad(d, ex);
        t.T4 += g * g * bracket * w;
      }
    }
  return t;
}

}  // namespace curvlab
