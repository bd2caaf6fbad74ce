#include "curvlab/repro.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvlab/report.hpp"
#include "curvlab/zoo.hpp"

namespace curvlab {

namespace {

constexpr Real kPi = std::numbers::pi_v<long double>;

ReproCheck make_check(std::string name, std::string rel, Real observed, Real expected, Real tol,
                      std::string source) {
  ReproCheck c{std::move(name), std::move(rel), observed, expected, tol, std::move(source), false, {}};
  if (c.relation == "eq") c.pass = std::fabs(observed - expected) <= tol;
  else if (c.relation == "le") c.pass = observed <= expected + tol;
  else if (c.relation == "ge") c.pass = observed >= expected - tol;
  else if (c.relation == "lt") c.pass = observed < expected;
  else if (c.relation == "gt") c.pass = observed > expected;
  else throw std::logic_error("unknown relation " + c.relation);
  return c;
}

ReproCheck flag_check(std::string name, bool ok, std::string source, std::string note) {
  ReproCheck c{std::move(name), "holds", ok ? 1.0L : 0.0L, 1, 0, std::move(source), ok, std::move(note)};
  return c;
}

char sign_of(Real v, Real tol) { return v > tol ? '+' : (v < -tol ? '-' : '0'); }

std::string sign_str(char s) { return s == '-' ? "-" : std::string(1, s); }

Real min_over_edges(const MarkovChain& c, bool sectional) {
  const DistanceMatrix d = graph_distance(c);
  Real m = kInf;
  for (const auto& e : c.edges())
    m = std::min(m, sectional ? ollivier_sectional(c, d, e.x, e.y) : ollivier_ricci(c, d, e.x, e.y, false).value);
  return m;
}

Real best_search(const MarkovChain& c, int restarts, const std::vector<std::uint64_t>& seeds,
                 const std::vector<Vector>& starts = {}, Real N = kInf) {
  Real best = kInf;
  for (auto s : seeds) {
    SearchOptions o;
    o.restarts = restarts;
    o.seed = s;
    o.N = N;
    o.seeds = starts;
    best = std::min(best, estimate_curvature(c, Mean::logarithmic(), o).K_upper);
  }
  return best;
}

struct Row {
  char ent, be, orc, sec;
};

}  // namespace

Real ReproParams::get(const std::string& key, Real fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

bool ReproReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ReproCheck& c) { return c.pass; });
}

json ReproReport::to_json() const {
  json a = json::array();
  for (const auto& c : checks) {
    json j = {{"name", c.name},         {"relation", c.relation}, {"observed", real_to_json(c.observed)},
              {"expected", real_to_json(c.expected)}, {"tol", real_to_json(c.tol)},
              {"source", c.source},     {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    a.push_back(j);
  }
  return {{"case", id}, {"params", params}, {"checks", a}, {"info", info}, {"pass", pass()}};
}

const std::vector<std::string>& repro_cases() {
  static const std::vector<std::string> ids = {"three_point",    "perturbed_c6",      "prism", "cycle_sandwich",
                                               "hypercube", "bernoulli_laplace", "table1"};
  return ids;
}

ReproReport run_repro(const std::string& id, const ReproParams& p) {
  if (id == "three_point") return repro_three_point(p);
  if (id == "perturbed_c6") return repro_perturbed_c6(p);
  if (id == "prism") return repro_prism(p);
  if (id == "cycle_sandwich") return repro_cycle_sandwich(p);
  if (id == "hypercube") return repro_hypercube(p);
  if (id == "bernoulli_laplace") return repro_bernoulli_laplace(p);
  if (id == "table1") return repro_table1(p);
  throw InputError("unknown repro case: " + id);
}

ThreePointDivergence three_point_divergence(Real alpha, int restarts) {
  ThreePoint t = three_point(alpha);
  const Mean m = Mean::logarithmic();
  ThreePointDivergence r;
  r.table_ratio = cd_ratio(t.zc.chain, m, t.rho, t.f, kInf);
  r.a_cross_scaled = A_rho(t.zc.chain, m, t.rho, t.f, laplacian(t.zc.chain, t.f)) / alpha;
  SearchOptions o;
  o.restarts = restarts;
  o.seeds = t.zc.seeds;
  r.searched_ratio = std::min(r.table_ratio, estimate_curvature(t.zc.chain, m, o).K_upper);
  return r;
}

ReproReport repro_three_point(const ReproParams& p) {
  const Real alpha = p.get("alpha", 5);
  ThreePoint t = three_point(alpha);
  const MarkovChain& c = t.zc.chain;
  const Real eps = t.epsilon;
  ReproReport r;
  r.id = "three_point";
  r.params = {{"alpha", real_to_json(alpha)}, {"epsilon", real_to_json(eps)}};
  r.checks.push_back(make_check("orc(x,y)", "eq", ollivier_ricci(c, 0, 1).value, 0.08L, 1e-9L, "reference"));
  r.checks.push_back(make_check("orc(y,z)", "eq", ollivier_ricci(c, 1, 2).value, 0.2L + eps, 1e-9L, "reference"));
  auto be = bakry_emery_per_vertex(c, kInf);
  r.checks.push_back(make_check("be(x)", "eq", be[0], 0.14L, 1e-7L, "reference"));
  r.checks.push_back(make_check("be(y)", "ge", be[1], 0.004L, 0, "reference"));
  r.checks.push_back(make_check("be(z)", "eq", be[2], 0.4L + eps / 2, 1e-7L, "reference"));
  r.checks.push_back(make_check("sec(x,y)", "eq", ollivier_sectional(c, 0, 1), -1, 1e-12L, "reference"));
  r.checks.push_back(make_check("birth_death_be(x)", "eq", birth_death_be(c, 0), be[0], 1e-7L, "oracle"));

  const Mean m = Mean::logarithmic();
  const Real A = A_rho(c, m, t.rho, t.f);
  const Real w1 = c.Q(0, 1) * c.pi(0), w2 = c.Q(1, 2) * c.pi(1);
  r.checks.push_back(make_check("A(f) <= w1 + w2 + w2/alpha^2", "le", A, w1 + w2 + w2 / (alpha * alpha), 1e-12L,
                                "reference"));

  const int restarts = static_cast<int>(p.get("restarts", 4));
  Real prev_table = kInf, prev_search = kInf;
  bool table_dec = true, search_dec = true;
  json sweep = json::array();
  for (Real a : {10.0L, 20.0L, 30.0L}) {
    auto d = three_point_divergence(a, restarts);
    table_dec = table_dec && d.table_ratio < prev_table;
    search_dec = search_dec && d.searched_ratio < prev_search;
    prev_table = d.table_ratio;
    prev_search = d.searched_ratio;
    sweep.push_back({{"alpha", real_to_json(a)},
                     {"table_ratio", real_to_json(d.table_ratio)},
                     {"searched_ratio", real_to_json(d.searched_ratio)}});
  }
  r.info["sweep"] = sweep;
  r.checks.push_back(flag_check("table witness ratio decreasing in alpha", table_dec, "reference", ""));
  r.checks.push_back(flag_check("searched ratio decreasing in alpha", search_dec, "oracle", ""));
  r.checks.push_back(make_check("searched ratio at alpha=30", "lt", prev_search, -10, 0, "reference"));
  auto d100 = three_point_divergence(100, 1);
  const Real target = 0.28L * 0.84L / 2.8L;
  r.checks.push_back(make_check("A(f,Delta f)/alpha at alpha=100", "eq", d100.a_cross_scaled, target, 0.05L * target,
                                "reference"));
  SearchOptions o;
  o.restarts = restarts;
  o.seeds = t.zc.seeds;
  Real ent = std::min(cd_ratio(c, m, t.rho, t.f, kInf), estimate_curvature(c, m, o).K_upper);
  r.info["entropic_upper"] = real_to_json(ent);
  r.info["table_ratio"] = real_to_json(cd_ratio(c, m, t.rho, t.f, kInf));
  return r;
}

ReproReport repro_perturbed_c6(const ReproParams& p) {
  const Real q = p.get("q", 0.2L), eps = p.get("eps", 1e-3L);
  const int restarts = static_cast<int>(p.get("restarts", 200));
  ZooChain z = perturbed_c6(q, eps);
  const MarkovChain& c = z.chain;
  ReproReport r;
  r.id = "perturbed_c6";
  r.params = {{"q", real_to_json(q)}, {"eps", real_to_json(eps)}, {"restarts", restarts}};
  r.checks.push_back(make_check("orc(0,1)", "eq", ollivier_ricci(c, 0, 1).value, -eps, 1e-12L, "reference"));
  r.checks.push_back(make_check("orc(0,1) birth-death formula", "eq", birth_death_orc(c, 0), -eps, 1e-12L, "exact"));
  auto be = bakry_emery_per_vertex(c, kInf);
  r.checks.push_back(make_check("be(0)", "lt", be[0], 0, 0, "reference"));
  r.checks.push_back(make_check("be global", "lt", *std::min_element(be.begin(), be.end()), 0, 0, "reference"));
  r.checks.push_back(make_check("sec min", "lt", min_over_edges(c, true), 0, 0, "reference"));
  Real ent = best_search(c, restarts, {1, 2, 3});
  r.checks.push_back(make_check("entropic search: no negative witness", "ge", ent, 0, 0, "reference"));
  json bev = json::array();
  for (Real v : be) bev.push_back(real_to_json(v));
  r.info["be_per_vertex"] = bev;
  r.info["entropic_upper"] = real_to_json(ent);
  const Real base = q / (50 * 6.0L * 6 * 6 * 6);
  ZooChain c0 = cycle(6, q);
  const auto pb = perturbation_bound(c0.chain, c);
  r.info["unperturbed_lower"] = real_to_json(base);
  r.info["perturbation_radius"] = real_to_json(pb.bound);
  r.info["theorem_lower"] = real_to_json(base - pb.bound);
  return r;
}

PrismWitnessValue prism_witness_value(int base_n, Real eps_hat, Real rho1, Real rho2) {
  ZooChain base = cycle(base_n, 0.25L);
  Prism pr = prism(base.chain, 2 * eps_hat, eps_hat, 0.5L);
  Vector psi0(base_n);
  for (int x = 0; x < base_n; ++x) psi0(x) = std::cos(2 * kPi * x / base_n);
  auto [rho, f] = prism_witness(pr, rho1, rho2, psi0);
  PrismWitnessValue v;
  v.lambda = 0.5L * (1 - std::cos(2 * kPi / base_n));
  const Mean m = Mean::logarithmic();
  v.evaluated = B_rho(pr.zc.chain, m, rho, f) / A_rho(pr.zc.chain, m, rho, f);
  v.closed_form = (0.25L * (rho2 - rho1) + eps_hat * v.lambda * (4 * rho1 + rho2)) / (2 * rho1 + rho2);
  return v;
}

ReproReport repro_prism(const ReproParams& p) {
  const int n = static_cast<int>(p.get("n", 5));
  const Real eh = p.get("eps", 1e-3L), rho1 = p.get("rho1", 2), rho2 = p.get("rho2", 1);
  ReproReport r;
  r.id = "prism";
  r.params = {{"n", n}, {"eps", real_to_json(eh)}, {"rho1", real_to_json(rho1)}, {"rho2", real_to_json(rho2)}};
  auto v = prism_witness_value(n, eh, rho1, rho2);
  r.checks.push_back(make_check("witness B/A vs closed form", "eq", v.evaluated, v.closed_form, 1e-8L, "exact"));
  r.checks.push_back(make_check("witness B/A", "lt", v.evaluated, 0, 0, "reference"));
  ZooChain base = cycle(n, 0.25L);
  Prism pr = prism(base.chain, 2 * eh, eh, 0.5L);
  const MarkovChain& c = pr.zc.chain;
  const DistanceMatrix d = graph_distance(c);
  Real orc_min = kInf, sec_min = kInf, sec_max = -kInf;
  for (const auto& e : c.edges()) {
    orc_min = std::min(orc_min, ollivier_ricci(c, d, e.x, e.y, false).value);
    Real s = ollivier_sectional(c, d, e.x, e.y);
    sec_min = std::min(sec_min, s);
    sec_max = std::max(sec_max, s);
  }
  r.checks.push_back(make_check("orc min", "gt", orc_min, 0, 0, "reference"));
  r.checks.push_back(make_check("sec min", "eq", sec_min, 0, 1e-12L, "reference"));
  r.checks.push_back(make_check("sec max", "eq", sec_max, 0, 1e-12L, "reference"));
  Real be = bakry_emery_global(c, kInf);
  r.checks.push_back(make_check("be global", "lt", be, 0, 0, "reference"));
  r.info["lambda"] = real_to_json(v.lambda);
  r.info["witness_value"] = real_to_json(v.evaluated);
  return r;
}

ReproReport repro_cycle_sandwich(const ReproParams& p) {
  const int k = static_cast<int>(p.get("n", 4));
  const Real q = p.get("q", 0.5L);
  const int restarts = static_cast<int>(p.get("restarts", 500));
  const int len = 4 * k;
  ZooChain z = cycle(len, q);
  ReproReport r;
  r.id = "cycle_sandwich";
  r.params = {{"n", k}, {"length", len}, {"q", real_to_json(q)}, {"restarts", restarts}};
  const Real lower = cayley_lower_bounds(*z.cayley)[0].K;
  const Real lambda1 = 2 * std::pow(std::sin(kPi / len), 2);
  SearchOptions o;
  o.restarts = restarts;
  o.seeds = z.seeds;
  o.seed = static_cast<std::uint64_t>(p.get("seed", 1));
  auto res = estimate_curvature(z.chain, Mean::logarithmic(), o);
  r.checks.push_back(make_check("lower <= search upper", "ge", res.K_upper, lower, 0, "reference"));
  r.checks.push_back(make_check("search upper <= lambda_1", "le", res.K_upper, lambda1, 1e-12L, "reference"));
  r.checks.push_back(make_check("spectral gap", "eq", spectral_gap(z.chain), lambda1, 1e-12L, "exact"));
  CycleWitness w = cycle_witness(k);
  Real wr = cd_ratio(z.chain, Mean::logarithmic(), w.rho, w.f, kInf);
  r.checks.push_back(make_check("witness ratio <= upper bound", "le", wr, cycle_upper_bound(k, q), 0, "reference"));
  r.info["lower"] = real_to_json(lower);
  r.info["search_upper"] = real_to_json(res.K_upper);
  r.info["lambda1"] = real_to_json(lambda1);
  r.info["witness_ratio"] = real_to_json(wr);
  r.info["witness_bound"] = real_to_json(cycle_upper_bound(k, q));
  return r;
}

ReproReport repro_hypercube(const ReproParams& p) {
  const int count = static_cast<int>(p.get("witnesses", 1000));
  ReproReport r;
  r.id = "hypercube";
  r.params = {{"witnesses", count}};
  for (int d : {2, 3}) {
    ZooChain z = hypercube(d, Real(1) / d);
    const int n = z.chain.n();
    Vector f(n);
    for (int x = 0; x < n; ++x) f(x) = __builtin_popcount(static_cast<unsigned>(x)) % 2;
    const Mean m = Mean::logarithmic();
    Real ratio = cd_ratio(z.chain, m, Density::uniform(n), f, d);
    r.checks.push_back(make_check("cd_ratio(rho=1, bipartite f, N=d) d=" + std::to_string(d), "eq", ratio, 0, 1e-10L,
                                  "reference"));
    auto ws = random_witnesses(z.chain, count, static_cast<std::uint64_t>(p.get("seed", 1)) + d, 4, d);
    auto rep = check_CD(z.chain, m, 0, d, ws);
    r.checks.push_back(
        make_check("CD(0,d) violations d=" + std::to_string(d), "eq", static_cast<Real>(rep.violations.size()), 0, 0,
                   "reference"));
    r.info["d" + std::to_string(d)] = {{"ratio", real_to_json(ratio)},
                                       {"checked", rep.checked},
                                       {"skipped", rep.skipped},
                                       {"min_margin", real_to_json(rep.min_margin)}};
  }
  return r;
}

ReproReport repro_bernoulli_laplace(const ReproParams& p) {
  const int L = static_cast<int>(p.get("L", 8)), N = static_cast<int>(p.get("N", 4));
  std::vector<Real> lambda(L, 1);
  for (int i = 0; i < L / 4; ++i) lambda[i] = 0;
  BernoulliLaplace b = bernoulli_laplace(L, N, lambda);
  const MarkovChain& c = b.zc.chain;
  ReproReport r;
  r.id = "bernoulli_laplace";
  json lam = json::array();
  for (Real l : lambda) lam.push_back(real_to_json(l));
  r.params = {{"L", L}, {"N", N}, {"lambda", lam}, {"rate_scale", real_to_json(b.rate_scale)}};
  const DistanceMatrix d = b.johnson_distance();
  const auto edges = b.johnson_edges();
  Real orc = kInf, sec = kInf, orc_support = kInf, sec_support = kInf;
  for (const auto& e : edges) {
    orc = std::min(orc, ollivier_ricci(c, d, e.x, e.y, false).value / b.rate_scale);
    sec = std::min(sec, ollivier_sectional(c, d, e.x, e.y));
  }
  orc_support = min_over_edges(c, false) / b.rate_scale;
  sec_support = min_over_edges(c, true);
  const Real bound = bernoulli_laplace_orc_bound(L, N, lambda);
  r.checks.push_back(make_check("orc min (rate units) >= bound", "ge", orc, bound, 1e-9L, "reference"));
  r.checks.push_back(make_check("orc min (rate units) >= 1/4", "ge", orc, 0.25L, 0, "reference"));
  r.checks.push_back(make_check("sec min", "ge", sec, 0, 1e-12L, "reference"));
  r.info["edges"] = edges.size();
  r.info["support_edges"] = c.edges().size();
  // curvatures measured in the support-graph metric instead of J(L, N)
  r.info["support_metric"] = {{"orc_min", real_to_json(orc_support)}, {"sec_min", real_to_json(sec_support)}};
  r.info["orc_min"] = real_to_json(orc);
  r.info["bound"] = real_to_json(bound);
  return r;
}

ReproReport repro_table1(const ReproParams& p) {
  ReproReport r;
  r.id = "table1";
  const Real tol = 1e-12L;
  const int restarts = static_cast<int>(p.get("restarts", 200));
  r.params = {{"restarts", restarts}};
  auto row_checks = [&](const std::string& name, Row want, Row got) {
    const char* cols[4] = {"ENT", "BE", "ORC", "SEC"};
    const char w[4] = {want.ent, want.be, want.orc, want.sec};
    const char g[4] = {got.ent, got.be, got.orc, got.sec};
    std::string ws, gs;
    for (int i = 0; i < 4; ++i) {
      ReproCheck c{name + " " + cols[i], "sign", Real(0), Real(0), tol, "reference", w[i] == g[i],
                   "expected " + sign_str(w[i]) + ", got " + sign_str(g[i])};
      r.checks.push_back(c);
      ws += w[i];
      gs += g[i];
    }
    r.info[name] = {{"expected", ws}, {"observed", gs}};
  };
  const Mean m = Mean::logarithmic();
  {
    ThreePoint t = three_point(5);
    const MarkovChain& c = t.zc.chain;
    SearchOptions o;
    o.restarts = 4;
    o.seeds = t.zc.seeds;
    Real ent = std::min(cd_ratio(c, m, t.rho, t.f, kInf), estimate_curvature(c, m, o).K_upper);
    row_checks("three_point",
               {'-', '+', '+', '-'},
               {sign_of(ent, tol), sign_of(bakry_emery_global(c, kInf), tol), sign_of(min_over_edges(c, false), tol),
                sign_of(min_over_edges(c, true), tol)});
  }
  {
    ZooChain z = perturbed_c6(0.2L, 1e-3L);
    const MarkovChain& c = z.chain;
    // "+" means no negative witness found; no positive theorem floor is available at this epsilon
    Real ent = best_search(c, restarts, {1, 2, 3});
    row_checks("perturbed_c6",
               {'+', '-', '-', '-'},
               {ent >= 0 ? '+' : '-', sign_of(bakry_emery_global(c, kInf), tol), sign_of(min_over_edges(c, false), tol),
                sign_of(min_over_edges(c, true), tol)});
  }
  {
    auto v = prism_witness_value(5, 1e-3L, 2, 1);
    ZooChain base = cycle(5, 0.25L);
    Prism pr = prism(base.chain, 2e-3L, 1e-3L, 0.5L);
    const MarkovChain& c = pr.zc.chain;
    row_checks("prism",
               {'-', '-', '+', '0'},
               {sign_of(v.evaluated, tol), sign_of(bakry_emery_global(c, kInf), tol),
                sign_of(min_over_edges(c, false), tol), sign_of(min_over_edges(c, true), tol)});
  }
  return r;
}

}  // namespace curvlab
