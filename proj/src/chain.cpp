#include "curvlab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace curvlab {

MarkovChain::MarkovChain(Matrix Q, Vector pi, std::vector<std::string> labels)
    : Q_(std::move(Q)), pi_(std::move(pi)), labels_(std::move(labels)) {
  if (Q_.rows() != Q_.cols() || Q_.rows() != pi_.size())
    throw InputError("chain: Q must be n x n and pi of length n");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n())
    throw InputError("chain: labels must have length n");
  const int N = n();
  nbrs_.assign(N, {});
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      if (x != y && (Q_(x, y) > 0 || Q_(y, x) > 0)) {
        nbrs_[x].push_back(y);
        if (x < y) edges_.push_back({x, y});
      }
}

Real MarkovChain::q_min() const {
  Real m = kInf;
  for (const auto& e : edges_) m = std::min({m, Q_(e.x, e.y), Q_(e.y, e.x)});
  return m;
}

Real MarkovChain::laziness() const {
  Real m = kInf;
  for (int x = 0; x < n(); ++x) m = std::min(m, Q_(x, x));
  return m;
}

bool MarkovChain::pi_normalized(Real tol) const { return std::abs(pi_.sum() - 1) <= tol; }

MarkovChain MarkovChain::normalized() const { return MarkovChain(Q_, pi_ / pi_.sum(), labels_); }

namespace {

void add(ValidationReport& r, std::string kind, Real res, std::string detail) {
  r.accepted = false;
  r.violations.push_back({std::move(kind), res, std::move(detail)});
}

std::vector<char> reach(const MarkovChain& c, bool forward) {
  const int n = c.n();
  std::vector<char> seen(n, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y = 0; y < n; ++y) {
      Real w = forward ? c.Q(x, y) : c.Q(y, x);
      if (y != x && w > 0 && !seen[y]) {
        seen[y] = 1;
        q.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace

ValidationReport validate_chain(const MarkovChain& c, const Tolerances& tol) {
  ValidationReport r;
  const int n = c.n();
  if (n < 1) {
    add(r, "size", 0, "empty state space");
    return r;
  }
  Real neg = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Real v = c.Q(x, y);
      if (!std::isfinite(v)) neg = kInf;
      else if (v < 0) neg = std::max(neg, -v);
    }
  if (neg > 0) add(r, "negative_entry", neg, "Q has negative or non-finite entries");

  Real stoch = 0;
  int worst = 0;
  for (int x = 0; x < n; ++x) {
    Real s = std::abs(c.Q().row(x).sum() - 1);
    if (s > stoch) stoch = s, worst = x;
  }
  if (stoch > tol.stoch) add(r, "stochasticity", stoch, "row " + std::to_string(worst));

  Real pmin = c.pi().minCoeff();
  if (!(pmin > 0) || !c.pi().allFinite())
    add(r, "nonpositive_pi", pmin > 0 ? Real(0) : -pmin, "pi must be positive and finite");

  Real rev = 0;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      Real a = c.Q(x, y) * c.pi(x), b = c.Q(y, x) * c.pi(y);
      Real scale = std::max(std::abs(a), std::abs(b));
      if (scale > 0) rev = std::max(rev, std::abs(a - b) / scale);
    }
  if (rev > tol.rev) add(r, "reversibility", rev, "detailed balance relative residual");

  auto fw = reach(c, true), bw = reach(c, false);
  int missing = 0;
  for (int x = 0; x < n; ++x) missing += (!fw[x] || !bw[x]);
  if (missing > 0)
    add(r, "irreducibility", missing, std::to_string(missing) + " states not strongly connected to 0");
  return r;
}

void require_valid(const MarkovChain& c, const Tolerances& tol) {
  auto r = validate_chain(c, tol);
  if (r.accepted) return;
  std::ostringstream os;
  os << "invalid chain:";
  for (const auto& v : r.violations)
    os << ' ' << v.kind << " (" << static_cast<double>(v.max_residual) << ")";
  throw InputError(os.str());
}

ValidationReport validate_graph(const WeightedGraph& g, Real tol) {
  ValidationReport r;
  if (g.n < 1 || g.m.size() != g.n) {
    add(r, "size", 0, "m must have length n >= 1");
    return r;
  }
  if (!(g.m.minCoeff() > 0)) add(r, "nonpositive_m", -g.m.minCoeff(), "vertex measure must be positive");
  std::vector<std::vector<char>> seen(g.n, std::vector<char>(g.n, 0));
  Vector deg = Vector::Zero(g.n);
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= g.n || e.v >= g.n || e.u == e.v) {
      add(r, "edge_index", 0, "bad edge endpoints");
      continue;
    }
    if (!(e.w > 0)) add(r, "nonpositive_weight", -e.w, "edge weights must be positive");
    if (seen[e.u][e.v]) add(r, "duplicate_edge", 0, "edge listed twice");
    seen[e.u][e.v] = seen[e.v][e.u] = 1;
    deg(e.u) += e.w;
    deg(e.v) += e.w;
  }
  Real over = 0;
  for (int x = 0; x < g.n; ++x) over = std::max(over, (deg(x) - g.m(x)) / g.m(x));
  if (over > tol) add(r, "laziness", over, "m(x) < sum of incident weights");
  return r;
}

MarkovChain from_weighted_graph(const WeightedGraph& g) {
  auto r = validate_graph(g);
  if (!r.accepted) throw InputError("invalid weighted graph: " + r.violations.front().kind);
  Matrix Q = Matrix::Zero(g.n, g.n);
  for (const auto& e : g.edges) {
    Q(e.u, e.v) = e.w / g.m(e.u);
    Q(e.v, e.u) = e.w / g.m(e.v);
  }
  for (int x = 0; x < g.n; ++x) Q(x, x) = std::max(Real(0), 1 - (Q.row(x).sum() - Q(x, x)));
  MarkovChain c(std::move(Q), g.m);
  auto fw = reach(c, true);
  if (std::count(fw.begin(), fw.end(), 0) > 0) throw InputError("irreducibility: graph is disconnected");
  return c;
}

WeightedGraph to_weighted_graph(const MarkovChain& c, const Tolerances& tol) {
  auto r = validate_chain(c, tol);
  for (const auto& v : r.violations)
    if (v.kind == "reversibility") throw InputError("to_weighted_graph: chain is not reversible");
  WeightedGraph g;
  g.n = c.n();
  g.m = c.pi();
  for (const auto& e : c.edges()) {
    Real w = 0.5L * (c.Q(e.x, e.y) * c.pi(e.x) + c.Q(e.y, e.x) * c.pi(e.y));
    g.edges.push_back({e.x, e.y, w});
  }
  return g;
}

int DistanceMatrix::diameter() const { return d.empty() ? 0 : *std::max_element(d.begin(), d.end()); }

Vector laplacian(const MarkovChain& c, const Vector& f) {
  const int n = c.n();
  Vector out(n);
  for (int x = 0; x < n; ++x) {
    Real s = 0;
    for (int y : c.neighbors(x)) s += c.Q(x, y) * (f(y) - f(x));
    out(x) = s;
  }
  return out;
}

Matrix laplacian_matrix(const MarkovChain& c) {
  Matrix L = c.Q();
  for (int x = 0; x < c.n(); ++x) L(x, x) = 0;
  for (int x = 0; x < c.n(); ++x) L(x, x) = -L.row(x).sum();
  return L;
}

VectorField gradient(const MarkovChain& c, const Vector& f) {
  VectorField v{Matrix::Zero(c.n(), c.n())};
  for (const auto& e : c.edges()) {
    v.V(e.x, e.y) = f(e.y) - f(e.x);
    v.V(e.y, e.x) = f(e.x) - f(e.y);
  }
  return v;
}

DistanceMatrix graph_distance(const MarkovChain& c) {
  const int n = c.n();
  DistanceMatrix D;
  D.n = n;
  D.d.assign(static_cast<std::size_t>(n) * n, -1);
  for (int s = 0; s < n; ++s) {
    int* row = &D.d[static_cast<std::size_t>(s) * n];
    std::deque<int> q{s};
    row[s] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : c.neighbors(x))
        if (row[y] < 0) {
          row[y] = row[x] + 1;
          q.push_back(y);
        }
    }
    for (int y = 0; y < n; ++y)
      if (row[y] < 0) throw InputError("graph_distance: support graph is disconnected");
  }
  return D;
}

Real spectral_gap(const MarkovChain& c) {
  const int n = c.n();
  auto r = validate_chain(c);
  for (const auto& v : r.violations)
    if (v.kind == "reversibility") throw InputError("spectral_gap: chain is not reversible");
  Vector s = c.pi().cwiseSqrt();
  Matrix S = -laplacian_matrix(c);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) S(x, y) *= s(x) / s(y);
  Matrix Ssym = 0.5L * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(Ssym, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  Real cut = 1e-12L * std::max(Real(1), std::abs(ev(n - 1)));
  for (int i = 0; i < n; ++i)
    if (ev(i) > cut) return ev(i);
  throw InputError("spectral_gap: no positive eigenvalue");
}

Real q_triple(const MarkovChain& c, int x, int y, int z) { return c.Q(y, x) * c.Q(y, z) * c.pi(y); }

Real inner_pi(const MarkovChain& c, const Vector& f, const Vector& g) {
  return (f.array() * g.array() * c.pi().array()).sum();
}

Real inner_pi(const MarkovChain& c, const VectorField& a, const VectorField& b) {
  Real s = 0;
  for (int x = 0; x < c.n(); ++x)
    for (int y : c.neighbors(x)) s += a.V(x, y) * b.V(x, y) * c.Q(x, y) * c.pi(x);
  return 0.5L * s;
}

}  // namespace curvlab
