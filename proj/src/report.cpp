#include "curvlab/report.hpp"

#include <cmath>
#include <sstream>

namespace curvlab {

EntropicInterval entropic_interval(const MarkovChain& c, const ReportOptions& opts) {
  EntropicInterval e;
  const Real qmin = c.q_min();
  if (std::isinf(opts.N)) {
    e.lower = universal_lower(qmin);
    e.lower_formula = "-(1/2 + 2/qmin)";
  } else {
    e.lower = universal_lower_findim(qmin, opts.N);
    e.lower_formula = "-(1/2 + (4/qmin)(1 + 4/N^2))";
  }
  SearchOptions so;
  so.restarts = opts.restarts;
  so.seed = opts.seed;
  so.N = opts.N;
  so.seeds = opts.seeds;
  const Mean m = Mean::logarithmic();
  if (opts.delta) {
    e.search = delta_curvature_estimate(c, m, *opts.delta, so);
  } else {
    e.search = estimate_curvature(c, m, so);
  }
  e.upper = e.search.K_upper;
  if (!opts.delta) {
    // Lichnerowicz: K <= lambda_1 for N = inf
    if (std::isinf(opts.N)) e.upper = std::min(e.upper, lichnerowicz_upper(c));
  }
  return e;
}

json curvature_report(const MarkovChain& c, const ReportOptions& opts, const json& meta) {
  json r;
  r["n"] = c.n();
  if (!meta.empty()) r["meta"] = meta;
  r["params"] = {{"N", real_to_json(opts.N)}, {"restarts", opts.restarts}, {"seed", opts.seed}};
  if (opts.delta) r["params"]["delta"] = real_to_json(*opts.delta);
  const DistanceMatrix d = graph_distance(c);
  if (opts.orc) {
    json a = json::array();
    for (const auto& e : c.edges()) a.push_back({e.x, e.y, real_to_json(ollivier_ricci(c, d, e.x, e.y, false).value)});
    r["orc"] = a;
  }
  if (opts.sec) {
    json a = json::array();
    for (const auto& e : c.edges()) a.push_back({e.x, e.y, real_to_json(ollivier_sectional(c, d, e.x, e.y))});
    r["sec"] = a;
  }
  if (opts.be) {
    auto pv = bakry_emery_per_vertex(c, opts.N);
    json a = json::array();
    Real g = kInf;
    for (Real k : pv) {
      a.push_back(real_to_json(k));
      g = std::min(g, k);
    }
    r["be"] = {{"N", real_to_json(opts.N)}, {"per_vertex", a}, {"global", real_to_json(g)}};
  }
  if (opts.ent) {
    auto e = entropic_interval(c, opts);
    json w = witness_to_json(e.search.best);
    r["ent"] = {{"interval", {real_to_json(e.lower), real_to_json(e.upper)}},
                {"lower_formula", e.lower_formula},
                {"search_upper", real_to_json(e.search.K_upper)},
                {"best_restart", e.search.best_restart},
                {"witness", w}};
    if (!opts.delta && std::isinf(opts.N)) r["ent"]["upper_formula"] = "min(search, lambda_1)";
  }
  return r;
}

std::string report_csv(const json& report) {
  std::ostringstream os;
  os << "kind,i,j,value\n";
  auto num = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const char* k : {"orc", "sec"})
    if (report.contains(k))
      for (const auto& row : report[k]) os << k << ',' << row[0] << ',' << row[1] << ',' << num(row[2]) << '\n';
  if (report.contains("be")) {
    const auto& pv = report["be"]["per_vertex"];
    for (std::size_t i = 0; i < pv.size(); ++i) os << "be," << i << ",-1," << num(pv[i]) << '\n';
  }
  if (report.contains("ent")) {
    os << "ent_lower,-1,-1," << num(report["ent"]["interval"][0]) << '\n';
    os << "ent_upper,-1,-1," << num(report["ent"]["interval"][1]) << '\n';
  }
  return os.str();
}

}  // namespace curvlab
