#include "curvlab/ricci_flat.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "curvlab/search.hpp"

namespace curvlab {

bool SimpleGraph::adjacent(int a, int b) const {
  return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

int SimpleGraph::regular_degree() const {
  if (n == 0) return -1;
  int d = degree(0);
  for (int v = 1; v < n; ++v)
    if (degree(v) != d) return -1;
  return d;
}

SimpleGraph simple_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  SimpleGraph g;
  g.n = n;
  g.adj.assign(n, {});
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw InputError("simple_graph: bad edge");
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  for (auto& l : g.adj) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return g;
}

SimpleGraph simple_graph(const MarkovChain& c) {
  std::vector<std::pair<int, int>> e;
  for (const auto& ed : c.edges()) e.push_back({ed.x, ed.y});
  return simple_graph(c.n(), e);
}

SimpleGraph simple_graph(const WeightedGraph& wg) {
  std::vector<std::pair<int, int>> e;
  for (const auto& ed : wg.edges)
    if (ed.w > 0) e.push_back({ed.u, ed.v});
  return simple_graph(wg.n, e);
}

std::string to_string(FlatVariant v) {
  switch (v) {
    case FlatVariant::plain: return "plain";
    case FlatVariant::R: return "R";
    case FlatVariant::S: return "S";
    case FlatVariant::RS: return "RS";
  }
  return "?";
}

FlatVariant parse_flat_variant(const std::string& s) {
  if (s == "plain") return FlatVariant::plain;
  if (s == "R") return FlatVariant::R;
  if (s == "S") return FlatVariant::S;
  if (s == "RS") return FlatVariant::RS;
  throw InputError("unknown flatness variant: " + s);
}

std::string to_string(FlatOutcome o) {
  switch (o) {
    case FlatOutcome::flat: return "flat";
    case FlatOutcome::not_flat: return "not_flat";
    case FlatOutcome::unknown: return "unknown";
  }
  return "?";
}

namespace {

bool wants_R(FlatVariant v) { return v == FlatVariant::R || v == FlatVariant::RS; }
bool wants_S(FlatVariant v) { return v == FlatVariant::S || v == FlatVariant::RS; }

// Relabelling the maps permutes the indices j, so eta_j(x) = y_j is no loss.
// Then (ii) makes each row eta_.(y_k) a bijection onto N(y_k), and (iii) for i
// reads {eta_i(y_j)}_j = N(y_i), i.e. column i is a bijection onto N(y_i).
struct Solver {
  const SimpleGraph& g;
  int x, d;
  FlatVariant variant;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;
  std::vector<int> y;
  std::vector<std::vector<std::vector<int>>> dom;  // dom[k][i] = N(y_k) ∩ N(y_i)
  std::vector<std::vector<int>> M;                 // M[k][i] = eta_i(y_k)
  std::vector<std::set<int>> row_used, col_used;

  Solver(const SimpleGraph& g_, int x_, FlatVariant v, std::uint64_t b)
      : g(g_), x(x_), d(g_.degree(x_)), variant(v), budget(b), y(g_.adj[x_]) {
    dom.assign(d, std::vector<std::vector<int>>(d));
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) {
        const auto& a = g.adj[y[k]];
        const auto& b = g.adj[y[i]];
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(dom[k][i]));
      }
    M.assign(d, std::vector<int>(d, -1));
    row_used.assign(d, {});
    col_used.assign(d, {});
  }

  bool place(int cell) {
    if (cell == d * d) return true;
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    const int k = cell / d, i = cell % d;
    for (int v : dom[k][i]) {
      if (row_used[k].count(v) || col_used[i].count(v)) continue;
      if (wants_R(variant) && k == i && v != x) continue;
      if (wants_S(variant) && i < k && M[i][k] != v) continue;
      M[k][i] = v;
      row_used[k].insert(v);
      col_used[i].insert(v);
      if (place(cell + 1)) return true;
      row_used[k].erase(v);
      col_used[i].erase(v);
      M[k][i] = -1;
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

FlatnessCertificate ricci_flat_at(const SimpleGraph& g, int x, FlatVariant variant, const FlatSearchOptions& opts) {
  if (x < 0 || x >= g.n) throw InputError("ricci_flat_at: vertex out of range");
  if (g.regular_degree() < 1) throw InputError("ricci_flat_at: graph must be regular with positive degree");
  Solver s(g, x, variant, opts.node_budget);
  FlatnessCertificate c;
  c.x = x;
  c.variant = variant;
  bool ok = s.place(0);
  c.nodes = s.nodes;
  if (!ok) {
    c.outcome = s.out_of_budget ? FlatOutcome::unknown : FlatOutcome::not_flat;
    return c;
  }
  c.outcome = FlatOutcome::flat;
  c.ball.push_back(x);
  for (int v : s.y) c.ball.push_back(v);
  c.eta.assign(s.d, std::vector<int>(s.d + 1));
  for (int j = 0; j < s.d; ++j) {
    c.eta[j][0] = s.y[j];
    for (int k = 0; k < s.d; ++k) c.eta[j][k + 1] = s.M[k][j];
  }
  return c;
}

bool verify_certificate(const SimpleGraph& g, const FlatnessCertificate& c) {
  if (c.outcome != FlatOutcome::flat) return false;
  const int d = g.regular_degree();
  if (d < 1 || c.x < 0 || c.x >= g.n) return false;
  if (static_cast<int>(c.ball.size()) != d + 1 || c.ball[0] != c.x) return false;
  std::vector<int> nb(c.ball.begin() + 1, c.ball.end());
  std::sort(nb.begin(), nb.end());
  if (nb != g.adj[c.x]) return false;
  if (static_cast<int>(c.eta.size()) != d) return false;
  for (const auto& e : c.eta)
    if (static_cast<int>(e.size()) != d + 1) return false;
  auto pos = [&](int v) {
    auto it = std::find(c.ball.begin(), c.ball.end(), v);
    return it == c.ball.end() ? -1 : static_cast<int>(it - c.ball.begin());
  };
  auto eta = [&](int j, int v) { return c.eta[j][pos(v)]; };
  for (int b = 0; b <= d; ++b) {
    std::set<int> seen;
    for (int j = 0; j < d; ++j) {
      int v = c.eta[j][b];
      if (!g.adjacent(c.ball[b], v)) return false;  // (i)
      if (!seen.insert(v).second) return false;     // (ii)
    }
  }
  for (int i = 0; i < d; ++i) {  // (iii)
    std::set<int> lhs, rhs;
    for (int j = 0; j < d; ++j) {
      int yi = eta(i, c.x), yj = eta(j, c.x);
      if (pos(yi) < 0 || pos(yj) < 0) return false;
      lhs.insert(eta(j, yi));
      rhs.insert(eta(i, yj));
    }
    if (lhs != rhs) return false;
  }
  if (wants_R(c.variant))
    for (int i = 0; i < d; ++i)
      if (eta(i, eta(i, c.x)) != c.x) return false;
  if (wants_S(c.variant))
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (eta(j, eta(i, c.x)) != eta(i, eta(j, c.x))) return false;
  return true;
}

std::string VertexFlatness::label() const {
  auto is = [&](FlatVariant v) { return outcome[static_cast<int>(v)] == FlatOutcome::flat; };
  if (is(FlatVariant::RS)) return "RS";
  if (is(FlatVariant::S)) return "S";
  if (is(FlatVariant::R)) return "R";
  if (is(FlatVariant::plain)) return "F";
  for (auto o : outcome)
    if (o == FlatOutcome::unknown) return "?";
  return "-";
}

std::vector<VertexFlatness> ricci_flat_report(const SimpleGraph& g, const FlatSearchOptions& opts) {
  if (g.regular_degree() < 1) throw InputError("ricci_flat_report: graph must be regular with positive degree");
  auto one = [&](int x) {
    VertexFlatness r;
    r.x = x;
    const FlatVariant order[4] = {FlatVariant::RS, FlatVariant::S, FlatVariant::R, FlatVariant::plain};
    for (FlatVariant v : order) {
      auto& slot = r.outcome[static_cast<int>(v)];
      // a certificate for a stronger variant serves the weaker ones
      bool implied = (v == FlatVariant::S || v == FlatVariant::R) &&
                     r.outcome[static_cast<int>(FlatVariant::RS)] == FlatOutcome::flat;
      if (v == FlatVariant::plain)
        for (int s = 1; s < 4; ++s) implied = implied || r.outcome[s] == FlatOutcome::flat;
      if (implied) {
        slot = FlatOutcome::flat;
        continue;
      }
      auto c = ricci_flat_at(g, x, v, opts);
      slot = c.outcome;
      if (c.outcome == FlatOutcome::flat && !verify_certificate(g, c))
        throw std::logic_error("ricci_flat_report: certificate failed verification");
    }
    return r;
  };
  std::vector<VertexFlatness> out(g.n);
  const int workers = worker_count(0, g.n);
  std::vector<std::future<void>> fs;
  for (int w = 0; w < workers; ++w)
    fs.push_back(std::async(std::launch::async, [&, w] {
      for (int x = w; x < g.n; x += workers) out[x] = one(x);
    }));
  for (auto& f : fs) f.get();
  return out;
}

}  // namespace curvlab
