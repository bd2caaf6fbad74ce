#include "curvlab/chain_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace curvlab {

namespace {

// long double number type so that plain numbers keep their extra digits
using ljson = nlohmann::basic_json<std::map, std::vector, std::string, bool, std::int64_t, std::uint64_t, long double>;

Real lreal(const ljson& j, const std::string& where) {
  if (j.is_number()) return j.get<long double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    errno = 0;
    long double v = std::strtold(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE) throw InputError(where + ": bad number '" + s + "'");
    return v;
  }
  throw InputError(where + ": expected a number");
}

Vector lvector(const ljson& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = lreal(j[i], where);
  return v;
}

int lint(const ljson& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_number_unsigned()) return static_cast<int>(j.get<std::uint64_t>());
  throw InputError(where + ": expected an integer");
}

json vec_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(real_to_json(v(i)));
  return a;
}

}  // namespace

json real_to_json(Real v) {
  if (std::isfinite(v) && std::fabs(v) <= std::numeric_limits<double>::max() &&
      (v == 0 || std::fabs(v) >= std::numeric_limits<double>::min()))
    return static_cast<double>(v);
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return std::string(buf);
}

Real real_from_json(const json& j) { return lreal(ljson::parse(j.dump()), "value"); }

ChainFile parse_chain(const std::string& text) {
  ljson j;
  try {
    j = ljson::parse(text);
  } catch (const std::exception& e) {
    throw InputError(std::string("chain file: ") + e.what());
  }
  if (!j.is_object()) throw InputError("chain file: expected an object");
  ChainFile out;
  // never dump ljson: its serializer formats long double with %g
  if (j.contains("meta")) out.meta = json::parse(text)["meta"];
  if (j.contains("graph")) {
    const ljson& g = j["graph"];
    WeightedGraph wg;
    wg.m = lvector(g.at("m"), "graph.m");
    wg.n = static_cast<int>(wg.m.size());
    if (!g.contains("edges") || !g["edges"].is_array()) throw InputError("graph.edges: expected an array");
    for (const auto& e : g["edges"]) {
      if (!e.is_array() || e.size() != 3) throw InputError("graph.edges: expected [i, j, w]");
      wg.edges.push_back({lint(e[0], "graph.edges"), lint(e[1], "graph.edges"), lreal(e[2], "graph.edges")});
    }
    auto rep = validate_graph(wg);
    if (!rep.accepted) throw InputError("graph: " + rep.violations.front().kind + " " + rep.violations.front().detail);
    out.chain = from_weighted_graph(wg);
    out.graph = wg;
    return out;
  }
  if (!j.contains("Q") || !j.contains("pi")) throw InputError("chain file: need Q and pi, or graph");
  const ljson& q = j["Q"];
  if (!q.is_array()) throw InputError("Q: expected a matrix");
  const int n = static_cast<int>(q.size());
  if (j.contains("n") && lint(j["n"], "n") != n) throw InputError("n does not match Q");
  Matrix Q(n, n);
  for (int x = 0; x < n; ++x) {
    Vector row = lvector(q[x], "Q row");
    if (row.size() != n) throw InputError("Q: not square");
    Q.row(x) = row.transpose();
  }
  Vector pi = lvector(j["pi"], "pi");
  if (pi.size() != n) throw InputError("pi: wrong length");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) {
      if (l.is_string()) labels.push_back(l.get<std::string>());
      else if (l.is_number_integer()) labels.push_back(std::to_string(l.get<long long>()));
      else throw InputError("labels: expected strings or integers");
    }
    if (static_cast<int>(labels.size()) != n) throw InputError("labels: wrong length");
  }
  out.chain = MarkovChain(std::move(Q), std::move(pi), std::move(labels));
  return out;
}

ChainFile load_chain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_chain(ss.str());
}

json chain_to_json(const MarkovChain& c, const json& meta) {
  json j;
  j["n"] = c.n();
  json Q = json::array();
  for (int x = 0; x < c.n(); ++x) Q.push_back(vec_json(c.Q().row(x).transpose()));
  j["Q"] = Q;
  j["pi"] = vec_json(c.pi());
  if (!c.labels().empty()) j["labels"] = c.labels();
  if (!meta.empty()) j["meta"] = meta;
  return j;
}

json graph_to_json(const WeightedGraph& g, const json& meta) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({e.u, e.v, real_to_json(e.w)});
  json j;
  j["graph"] = {{"m", vec_json(g.m)}, {"edges", edges}};
  if (!meta.empty()) j["meta"] = meta;
  return j;
}

json witness_to_json(const CurvatureWitness& w) {
  return {{"rho", vec_json(w.rho.values)}, {"f", vec_json(w.f)}, {"N", real_to_json(w.N)},
          {"value", real_to_json(w.value)}};
}

CurvatureWitness witness_from_json(const json& j) {
  ljson l = ljson::parse(j.dump());
  CurvatureWitness w;
  w.rho.values = lvector(l.at("rho"), "rho");
  w.f = lvector(l.at("f"), "f");
  if (w.f.size() != w.rho.values.size()) throw InputError("witness: rho and f differ in length");
  w.N = l.contains("N") ? lreal(l["N"], "N") : kInf;
  w.value = l.contains("value") ? lreal(l["value"], "value") : Real(0);
  return w;
}

}  // namespace curvlab
