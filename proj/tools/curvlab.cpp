#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "curvlab/report.hpp"
#include "curvlab/repro.hpp"
#include "curvlab/ricci_flat.hpp"
#include "curvlab/zoo.hpp"

using namespace curvlab;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

std::vector<Real> parse_list(const std::string& s) {
  std::vector<Real> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stold(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError("bad number in list: " + tok);
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (Real v : parse_list(s)) out.push_back(static_cast<int>(v));
  return out;
}

// "1,0;0,1" -> {{1,0},{0,1}}
std::vector<std::vector<int>> parse_gens(const std::string& s) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';'))
    if (!tok.empty()) out.push_back(parse_ints(tok));
  return out;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

json zoo_meta(const ZooChain& z) {
  json p = json::object();
  for (const auto& [k, v] : z.params) p[k] = v;
  return {{"family", z.family}, {"params", p}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvlab: discrete curvature of finite reversible Markov chains"};
  app.require_subcommand(1);
  std::string out;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a chain file");
  std::string family;
  int n = 6, d = 3, L = 8, N = 4, base_n = 5;
  double q = 0.25, q_edge = -1, alpha = 5, eps = 1e-3, r1 = 2e-3, r2 = 1e-3, rate_scale = -1;
  std::string lambda_s, orders_s, gens_s, rates_s, up_s, down_s;
  gen->add_option("family", family, "cycle | hypercube | abelian-cayley | birth-death | three-point | perturbed-c6 | "
                                    "prism | bernoulli-laplace | complement-c4-c5")
      ->required();
  gen->add_option("--n", n, "cycle length");
  gen->add_option("--q", q, "edge rate");
  gen->add_option("--d", d, "hypercube dimension");
  gen->add_option("--q-edge", q_edge, "hypercube edge rate (default 1/d)");
  gen->add_option("--alpha", alpha, "three-point parameter");
  gen->add_option("--eps", eps, "perturbation size");
  gen->add_option("--base-n", base_n, "prism base cycle length");
  gen->add_option("--r1", r1, "prism layer 1 scale");
  gen->add_option("--r2", r2, "prism layer 2 scale");
  gen->add_option("--L", L, "sites");
  gen->add_option("--N", N, "particles");
  gen->add_option("--lambda", lambda_s, "intensities, comma separated");
  gen->add_option("--rate-scale", rate_scale, "multiplier on Bernoulli-Laplace rates (default: laziness 1/2)");
  gen->add_option("--orders", orders_s, "cyclic factor orders, e.g. 3,4");
  gen->add_option("--gens", gens_s, "generators, e.g. 1,0;0,1");
  gen->add_option("--rates", rates_s, "generator rates");
  gen->add_option("--up", up_s, "birth rates Q+(i)");
  gen->add_option("--down", down_s, "death rates Q-(i)");
  gen->add_option("-o,--out", out, "output file (default stdout)");

  // curvature
  auto* curv = app.add_subcommand("curvature", "compute curvature report for a chain file");
  std::string chain_path, which = "orc,sec,be";
  double cN = -1, delta = -1;
  int restarts = 20;
  std::uint64_t seed = 1;
  bool csv = false;
  curv->add_option("chain", chain_path, "chain JSON file")->required();
  curv->add_option("--which", which, "subset of ent,be,orc,sec");
  curv->add_option("--N", cN, "dimension parameter (default infinity)");
  curv->add_option("--delta", delta, "restrict entropic search to delta-bounded log gradients");
  curv->add_option("--restarts", restarts, "entropic search restarts");
  curv->add_option("--seed", seed, "random seed");
  curv->add_flag("--csv", csv, "flat CSV output");
  curv->add_option("-o,--out", out, "output file (default stdout)");

  // repro
  auto* rep = app.add_subcommand("repro", "run a reproduction case");
  std::string case_id;
  std::vector<std::string> kv;
  rep->add_option("case", case_id, "three_point | perturbed_c6 | prism | cycle_sandwich | hypercube | "
                                   "bernoulli_laplace | table1")
      ->required();
  double r_alpha = -1, r_n = -1, r_q = -1, r_eps = -1, r_restarts = -1, r_seed = -1;
  rep->add_option("--alpha", r_alpha);
  rep->add_option("--n", r_n);
  rep->add_option("--q", r_q);
  rep->add_option("--eps", r_eps);
  rep->add_option("--restarts", r_restarts);
  rep->add_option("--seed", r_seed);
  rep->add_option("-o,--out", out, "output file (default stdout)");

  // ricci-flat
  auto* rf = app.add_subcommand("ricci-flat", "classify vertices by Ricci flatness variant");
  std::string rf_path;
  std::uint64_t budget = 50'000'000;
  rf->add_option("chain", rf_path, "chain JSON file")->required();
  rf->add_option("--budget", budget, "node budget per search");
  rf->add_option("-o,--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*gen) {
      json doc;
      if (family == "cycle") {
        auto z = cycle(n, q);
        doc = chain_to_json(z.chain, zoo_meta(z));
      } else if (family == "hypercube") {
        auto z = hypercube(d, q_edge > 0 ? q_edge : 1.0 / d);
        doc = chain_to_json(z.chain, zoo_meta(z));
      } else if (family == "abelian-cayley") {
        std::vector<Real> rates = parse_list(rates_s);
        auto z = abelian_cayley(parse_ints(orders_s), parse_gens(gens_s), rates);
        doc = chain_to_json(z.chain, zoo_meta(z));
      } else if (family == "birth-death") {
        auto z = birth_death(parse_list(up_s), parse_list(down_s));
        doc = chain_to_json(z.chain, zoo_meta(z));
      } else if (family == "three-point") {
        auto t = three_point(alpha);
        json meta = zoo_meta(t.zc);
        meta["witness"] = witness_to_json({t.rho, t.f, kInf, cd_ratio(t.zc.chain, Mean::logarithmic(), t.rho, t.f, kInf)});
        doc = chain_to_json(t.zc.chain, meta);
      } else if (family == "perturbed-c6") {
        auto z = perturbed_c6(q, eps);
        doc = chain_to_json(z.chain, zoo_meta(z));
      } else if (family == "prism") {
        auto base = cycle(base_n, 0.25L);
        auto p = prism(base.chain, r1, r2, q);
        doc = chain_to_json(p.zc.chain, zoo_meta(p.zc));
      } else if (family == "bernoulli-laplace") {
        std::vector<Real> lam = lambda_s.empty() ? std::vector<Real>(L, 1) : parse_list(lambda_s);
        auto b = bernoulli_laplace(L, N, lam, rate_scale > 0 ? std::optional<Real>(rate_scale) : std::nullopt);
        json meta = zoo_meta(b.zc);
        meta["reversible"] = b.reversible;
        doc = chain_to_json(b.zc.chain, meta);
      } else if (family == "complement-c4-c5") {
        doc = graph_to_json(complement_c4_c5(), {{"family", "complement_c4_c5"}});
      } else {
        throw InputError("unknown family: " + family);
      }
      emit(doc.dump(1), out);
      return 0;
    }

    if (*curv) {
      ChainFile cf = load_chain(chain_path);
      ReportOptions ro;
      std::stringstream ss(which);
      std::string w;
      while (std::getline(ss, w, ',')) {
        if (w == "ent") ro.ent = true;
        else if (w == "be") ro.be = true;
        else if (w == "orc") ro.orc = true;
        else if (w == "sec") ro.sec = true;
        else if (!w.empty()) throw InputError("unknown curvature: " + w);
      }
      if (cN > 0) ro.N = cN;
      if (delta >= 0) ro.delta = delta;
      ro.restarts = restarts;
      ro.seed = seed;
      ValidationReport vr = validate_chain(cf.chain);
      if (!vr.accepted) {
        // transport curvatures only need a stochastic kernel
        bool kernel_ok = true;
        for (const auto& v : vr.violations)
          if (v.kind != "reversibility" && v.kind != "irreducibility") kernel_ok = false;
        if (!kernel_ok || ro.ent || ro.be) {
          json err = json::array();
          for (const auto& v : vr.violations) err.push_back({{"kind", v.kind}, {"detail", v.detail}});
          std::cerr << json{{"error", "validation failed"}, {"violations", err}}.dump(1) << '\n';
          return kExitInput;
        }
      }
      json r = curvature_report(cf.chain, ro, cf.meta);
      emit(csv ? report_csv(r) : r.dump(1), out);
      return 0;
    }

    if (*rep) {
      ReproParams p;
      auto put = [&](const char* k, double v) {
        if (v >= 0) p.values[k] = v;
      };
      put("alpha", r_alpha);
      put("n", r_n);
      put("q", r_q);
      put("eps", r_eps);
      put("restarts", r_restarts);
      put("seed", r_seed);
      ReproReport report = run_repro(case_id, p);
      emit(report.to_json().dump(1), out);
      return report.pass() ? 0 : kExitMismatch;
    }

    if (*rf) {
      ChainFile cf = load_chain(rf_path);
      SimpleGraph g = simple_graph(cf.chain);
      FlatSearchOptions fo;
      fo.node_budget = budget;
      auto res = ricci_flat_report(g, fo);
      json a = json::array();
      for (const auto& v : res) {
        json o = {{"vertex", v.x}, {"label", v.label()}};
        const char* names[4] = {"plain", "R", "S", "RS"};
        for (int i = 0; i < 4; ++i) o[names[i]] = to_string(v.outcome[i]);
        a.push_back(o);
      }
      emit(json{{"degree", g.regular_degree()}, {"vertices", a}}.dump(1), out);
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DegenerateWitness& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
