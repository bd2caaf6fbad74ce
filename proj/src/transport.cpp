#include "curvlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>

namespace curvlab {

namespace {

struct Marginals {
  std::vector<int> src, dst;
  std::vector<Real> a, b;
};

Marginals support(const Vector& mu, const Vector& nu) {
  if (mu.size() != nu.size()) throw InputError("transport: measures on different state sets");
  if (mu.minCoeff() < 0 || nu.minCoeff() < 0) throw InputError("transport: negative mass");
  Real ma = mu.sum(), mb = nu.sum();
  if (!(ma > 0) || std::abs(ma - mb) > 1e-10L * std::max(ma, mb)) throw InputError("transport: mass mismatch");
  Marginals m;
  for (int i = 0; i < mu.size(); ++i) {
    if (mu(i) > 0) m.src.push_back(i), m.a.push_back(mu(i));
    if (nu(i) > 0) m.dst.push_back(i), m.b.push_back(nu(i) * ma / mb);
  }
  return m;
}

}  // namespace

W1Result w1(const Vector& mu, const Vector& nu, const DistanceMatrix& d) {
  Marginals mg = support(mu, nu);
  const int m = static_cast<int>(mg.src.size()), k = static_cast<int>(mg.dst.size());
  auto cost = [&](int i, int j) { return Real(d(mg.src[i], mg.dst[j])); };

  // basis cells with flows; northwest-corner start gives m + k - 1 cells
  std::vector<std::pair<int, int>> basis;
  std::vector<Real> flow;
  {
    std::vector<Real> a = mg.a, b = mg.b;
    int i = 0, j = 0;
    while (true) {
      Real x = std::min(a[i], b[j]);
      basis.push_back({i, j});
      flow.push_back(x);
      if (i == m - 1 && j == k - 1) break;
      bool row_done = a[i] <= b[j];
      a[i] -= x;
      b[j] -= x;
      if (row_done) a[i] = 0;
      else b[j] = 0;
      if (i < m - 1 && (row_done || j == k - 1)) ++i;
      else ++j;
    }
  }

  Vector u(m), v(k);
  const Real eps = 1e-12L * std::max<Real>(1, d.diameter());
  for (int iter = 0; iter < 50 * (m + k) * (m + k) + 100; ++iter) {
    // tree adjacency: nodes 0..m-1 rows, m..m+k-1 columns
    std::vector<std::vector<std::pair<int, int>>> adj(m + k);
    for (int e = 0; e < static_cast<int>(basis.size()); ++e) {
      adj[basis[e].first].push_back({m + basis[e].second, e});
      adj[m + basis[e].second].push_back({basis[e].first, e});
    }
    std::vector<char> seen(m + k, 0);
    std::vector<Real> pot(m + k, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      for (auto [b, e] : adj[a])
        if (!seen[b]) {
          seen[b] = 1;
          Real c = cost(basis[e].first, basis[e].second);
          pot[b] = c - pot[a];
          q.push_back(b);
        }
    }
    for (int i = 0; i < m; ++i) u(i) = pot[i];
    for (int j = 0; j < k; ++j) v(j) = pot[m + j];

    int ei = -1, ej = -1;
    for (int i = 0; i < m && ei < 0; ++i)
      for (int j = 0; j < k; ++j)
        if (cost(i, j) - u(i) - v(j) < -eps) {
          ei = i, ej = j;
          break;
        }
    if (ei < 0) break;

    // tree path from row ei to column ej
    std::vector<int> parent(m + k, -1), pedge(m + k, -1);
    std::fill(seen.begin(), seen.end(), 0);
    q = {ei};
    seen[ei] = 1;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      for (auto [b, e] : adj[a])
        if (!seen[b]) {
          seen[b] = 1;
          parent[b] = a;
          pedge[b] = e;
          q.push_back(b);
        }
    }
    std::vector<int> path;  // edges from column ej back to row ei
    for (int node = m + ej; node != ei; node = parent[node]) path.push_back(pedge[node]);
    // alternate starting with '-' at the edge touching column ej
    Real theta = std::numeric_limits<Real>::max();
    int leave = -1;
    for (std::size_t t = 0; t < path.size(); t += 2) {
      int e = path[t];
      if (flow[e] < theta || (flow[e] == theta && e < leave)) theta = flow[e], leave = e;
    }
    for (std::size_t t = 0; t < path.size(); ++t) flow[path[t]] += (t % 2 == 0 ? -theta : theta);
    flow[leave] = theta;
    basis[leave] = {ei, ej};
  }

  W1Result r;
  const int n = static_cast<int>(mu.size());
  r.plan.gamma = Matrix::Zero(n, n);
  r.u = Vector::Zero(n);
  r.v = Vector::Zero(n);
  for (std::size_t e = 0; e < basis.size(); ++e) {
    Real f = std::max(Real(0), flow[e]);
    int a = mg.src[basis[e].first], b = mg.dst[basis[e].second];
    r.plan.gamma(a, b) += f;
    r.plan.cost += f * d(a, b);
    if (f > 0) r.plan.bottleneck = std::max(r.plan.bottleneck, d(a, b));
  }
  for (int i = 0; i < m; ++i) r.u(mg.src[i]) = u(i);
  for (int j = 0; j < k; ++j) r.v(mg.dst[j]) = v(j);
  r.cost = r.plan.cost;
  return r;
}

namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, Real,
                    boost::property<boost::edge_residual_capacity_t, Real,
                                    boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;

Real max_flow_within(const Marginals& mg, const DistanceMatrix& d, int t) {
  const int m = static_cast<int>(mg.src.size()), k = static_cast<int>(mg.dst.size());
  FlowGraph g(m + k + 2);
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  auto link = [&](int a, int b, Real c) {
    auto e = boost::add_edge(a, b, g).first;
    auto r = boost::add_edge(b, a, g).first;
    cap[e] = c;
    cap[r] = 0;
    rev[e] = r;
    rev[r] = e;
  };
  const int s = m + k, sink = m + k + 1;
  Real total = 0;
  for (int i = 0; i < m; ++i) link(s, i, mg.a[i]), total += mg.a[i];
  for (int j = 0; j < k; ++j) link(m + j, sink, mg.b[j]);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < k; ++j)
      if (d(mg.src[i], mg.dst[j]) <= t) link(i, m + j, total);
  return boost::edmonds_karp_max_flow(g, s, sink);
}

}  // namespace

int w_inf(const Vector& mu, const Vector& nu, const DistanceMatrix& d) {
  Marginals mg = support(mu, nu);
  std::vector<int> ts;
  for (int a : mg.src)
    for (int b : mg.dst) ts.push_back(d(a, b));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  Real total = 0;
  for (Real a : mg.a) total += a;
  int lo = 0, hi = static_cast<int>(ts.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (max_flow_within(mg, d, ts[mid]) >= total * (1 - 1e-12L)) hi = mid;
    else lo = mid + 1;
  }
  return ts[lo];
}

LpResult solve_lp_max(const Vector& c, const Matrix& A, const Vector& b) {
  const int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) throw InputError("lp: dimension mismatch");
  if (m > 0 && b.minCoeff() < 0) throw InputError("lp: origin must be feasible");
  // compact tableau: basic_i = T(i,n) + sum_j T(i,j) nonbasic_j; objective in row m
  Matrix T(m + 1, n + 1);
  T.topLeftCorner(m, n) = -A;
  T.col(n).head(m) = b;
  T.row(m).head(n) = c.transpose();
  T(m, n) = 0;
  std::vector<int> nonbasic(n), basic(m);
  for (int j = 0; j < n; ++j) nonbasic[j] = j;
  for (int i = 0; i < m; ++i) basic[i] = n + i;
  const Real eps = 1e-13L * std::max<Real>(1, A.size() ? A.cwiseAbs().maxCoeff() : Real(0));

  LpResult r;
  for (int iter = 0; iter < 100000; ++iter) {
    int s = -1;
    for (int j = 0; j < n; ++j)
      if (T(m, j) > eps && (s < 0 || nonbasic[j] < nonbasic[s])) s = j;
    if (s < 0) {
      r.optimal = true;
      break;
    }
    int p = -1;
    Real best = 0;
    for (int i = 0; i < m; ++i)
      if (T(i, s) < -eps) {
        Real ratio = T(i, n) / -T(i, s);
        if (p < 0 || ratio < best - eps || (ratio <= best + eps && basic[i] < basic[p])) p = i, best = ratio;
      }
    if (p < 0) throw InputError("lp: unbounded");
    Real piv = T(p, s);
    Vector prow = T.row(p);
    // new row p expresses the entering variable
    for (int j = 0; j <= n; ++j) T(p, j) = (j == s) ? 1 / piv : -prow(j) / piv;
    for (int i = 0; i <= m; ++i) {
      if (i == p) continue;
      Real f = T(i, s);
      if (f == 0) continue;
      for (int j = 0; j <= n; ++j) T(i, j) = (j == s) ? f / piv : T(i, j) - f * prow(j) / piv;
    }
    std::swap(basic[p], nonbasic[s]);
  }
  r.value = T(m, n);
  r.x = Vector::Zero(n);
  for (int i = 0; i < m; ++i)
    if (basic[i] < n) r.x(basic[i]) = T(i, n);
  return r;
}

}  // namespace curvlab
