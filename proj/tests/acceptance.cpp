// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "curvlab/classical.hpp"
#include "curvlab/repro.hpp"
#include "curvlab/ricci_flat.hpp"
#include "curvlab/zoo.hpp"
#include "support.hpp"

using namespace curvlab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

constexpr Real kPi = std::numbers::pi_v<long double>;

Outcome c1() {
  auto t0 = Clock::now();
  ThreePoint t = three_point(5);
  const MarkovChain& c = t.zc.chain;
  const Real eps = t.epsilon;
  auto be = bakry_emery_per_vertex(c, kInf);
  bool ok = std::fabs(ollivier_ricci(c, 0, 1).value - 0.08L) < 1e-9L &&
            std::fabs(ollivier_ricci(c, 1, 2).value - (0.2L + eps)) < 1e-7L && std::fabs(be[0] - 0.14L) < 1e-7L &&
            std::fabs(be[2] - (0.4L + eps / 2)) < 1e-7L && be[1] >= 0.004L &&
            ollivier_sectional(c, 0, 1) == -1;
  double s = seconds_since(t0);
  return {ok && s < 1, fmt("BE(y)=%.6f", static_cast<double>(be[1])) + fmt(" time=%.3fs", s)};
}

Outcome c2() {
  auto t0 = Clock::now();
  Real prev_t = kInf, prev_s = kInf;
  bool dec = true;
  std::string d;
  for (Real a : {10.0L, 20.0L, 30.0L}) {
    auto r = three_point_divergence(a, 4);
    dec = dec && r.table_ratio < prev_t && r.searched_ratio < prev_s;
    prev_t = r.table_ratio;
    prev_s = r.searched_ratio;
    d += fmt(" %.3f", static_cast<double>(r.searched_ratio));
  }
  auto r100 = three_point_divergence(100, 1);
  const Real target = 0.28L * 0.84L / 2.8L;
  bool near = std::fabs(r100.a_cross_scaled - target) <= 0.05L * target;
  double s = seconds_since(t0);
  return {dec && prev_s < -10 && near && s < 1,
          "ratios" + d + fmt(" A/alpha=%.5f", static_cast<double>(r100.a_cross_scaled)) + fmt(" time=%.3fs", s)};
}

Outcome c3() {
  auto t0 = Clock::now();
  ZooChain z = perturbed_c6(0.2L, 1e-3L);
  const MarkovChain& c = z.chain;
  Real orc = ollivier_ricci(c, 0, 1).value;
  Real be0 = bakry_emery_local(c, 0, kInf).K;
  Real best = kInf;
  for (std::uint64_t seed : {1, 2, 3}) {
    SearchOptions o;
    o.restarts = 200;
    o.seed = seed;
    best = std::min(best, estimate_curvature(c, Mean::logarithmic(), o).K_upper);
  }
  double s = seconds_since(t0);
  bool ok = std::fabs(orc + 1e-3L) < 1e-12L && be0 < 0 && best >= 0 && s < 120;
  return {ok, fmt("ORC(0,1)=%.3g", static_cast<double>(orc)) + fmt(" BE(0)=%.3g", static_cast<double>(be0)) +
                  fmt(" best=%.4f", static_cast<double>(best)) + fmt(" time=%.1fs", s)};
}

Outcome c4() {
  auto v = prism_witness_value(5, 1e-3L, 2, 1);
  ZooChain base = cycle(5, 0.25L);
  Prism pr = prism(base.chain, 2e-3L, 1e-3L, 0.5L);
  const MarkovChain& c = pr.zc.chain;
  const DistanceMatrix d = graph_distance(c);
  bool orc_pos = true, sec_zero = true;
  for (const auto& e : c.edges()) {
    orc_pos = orc_pos && ollivier_ricci(c, d, e.x, e.y, false).value > 0;
    sec_zero = sec_zero && ollivier_sectional(c, d, e.x, e.y) == 0;
  }
  bool ok = std::fabs(v.evaluated - v.closed_form) < 1e-8L && v.evaluated < 0 && orc_pos && sec_zero;
  return {ok, fmt("B/A=%.10f", static_cast<double>(v.evaluated)) + fmt(" closed=%.10f", static_cast<double>(v.closed_form))};
}

Outcome c5() {
  auto t0 = Clock::now();
  ZooChain z = cycle(16, 0.5L);
  SearchOptions o;
  o.restarts = 500;
  o.seeds = z.seeds;
  auto res = estimate_curvature(z.chain, Mean::logarithmic(), o);
  const Real lower = 0.5L / (50 * std::pow(16.0L, 4));
  const Real lambda1 = 2 * std::pow(std::sin(kPi / 16), 2);
  CycleWitness w = cycle_witness(4);
  Real wr = cd_ratio(z.chain, Mean::logarithmic(), w.rho, w.f, kInf);
  Real wb = 5000 * 0.5L * std::pow(4.0L, -4) * std::pow(std::log(4.0L), 2);
  double s = seconds_since(t0);
  bool ok = lower <= res.K_upper && res.K_upper <= lambda1 && wr <= wb && s < 300;
  return {ok, fmt("upper=%.6g", static_cast<double>(res.K_upper)) + fmt(" witness=%.5f", static_cast<double>(wr)) +
                  fmt(" time=%.1fs", s)};
}

Outcome c6() {
  bool ok = true;
  std::string d;
  for (int dim : {2, 3}) {
    ZooChain z = hypercube(dim, Real(1) / dim);
    const int n = z.chain.n();
    Vector f(n);
    for (int x = 0; x < n; ++x) f(x) = __builtin_popcount(static_cast<unsigned>(x)) % 2;
    Real r = cd_ratio(z.chain, Mean::logarithmic(), Density::uniform(n), f, dim);
    auto ws = random_witnesses(z.chain, 1000, 7 + dim, 4, dim);
    auto rep = check_CD(z.chain, Mean::logarithmic(), 0, dim, ws);
    ok = ok && std::fabs(r) < 1e-10L && rep.ok() && rep.checked + rep.skipped == 1000;
    d += fmt(" d=%.0f:", dim) + fmt(" ratio=%.6f", static_cast<double>(r)) + fmt(" CD-violations=%.0f", rep.violations.size());
  }
  return {ok, d};
}

Outcome c7() {
  auto t0 = Clock::now();
  std::vector<Real> lam{0, 0, 1, 1, 1, 1, 1, 1};
  BernoulliLaplace b = bernoulli_laplace(8, 4, lam);
  const DistanceMatrix d = b.johnson_distance();
  const auto edges = b.johnson_edges();
  Real orc = kInf, sec = kInf;
  for (const auto& e : edges) {
    orc = std::min(orc, ollivier_ricci(b.zc.chain, d, e.x, e.y, false).value / b.rate_scale);
    sec = std::min(sec, ollivier_sectional(b.zc.chain, d, e.x, e.y));
  }
  double s = seconds_since(t0);
  bool ok = orc >= 0.375L - 1e-9L && orc >= 0.25L && sec >= 0 && edges.size() == 560 && s < 60;
  return {ok, fmt("edges=%.0f", edges.size()) + fmt(" ORC/s=%.6f", static_cast<double>(orc)) +
                  fmt(" SEC=%.0f", static_cast<double>(sec)) + fmt(" time=%.2fs", s)};
}

Outcome c8() {
  const Mean m = Mean::logarithmic();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(-8, 8);
  int bad = 0;
  const Real tol = 1e-10L;
  for (int i = 0; i < 100000; ++i) {
    Real a = std::exp(Real(U(rng))), be = std::exp(Real(U(rng))), g = std::exp(Real(U(rng)));
    Real S = bfun(m, a, be, g), T = bfun(m, g, be, a);
    Real l = std::log(a * g / (be * be));
    Real sc = tol * (a + be + g);
    if (S < -sc) ++bad;                                          // (b)
    if (a >= g && S < T - sc) ++bad;                             // (c)
    if (S + T < 0.08L * be * l * l - sc) ++bad;                  // (d)
    if (a / be >= 1.0L / 256 && a / be <= 256 && g / be >= 1.0L / 256 && g / be <= 256 &&
        S + T > 34 * be * l * l + sc)
      ++bad;                                                     // (e)
    Real harm = S + T > 0 ? S * T / (S + T) : 0;
    if (m.theta(a, be) + m.theta(be, g) + harm < be / 0.93L - sc) ++bad;  // (f)
    if (std::fabs(bfun(m, a, be, a) - bfun(m, be, a, be)) > sc) ++bad;    // (g)
    if (4 * m.theta(a, be) + bfun(m, a, be, a) < 2 * (a + be) - sc) ++bad;
    Real L = b0(m, g, be, a) * m.theta(g, be) + b0(m, a, be, g) * m.theta(a, be);
    Real s2 = tol * (a + be + g) * (a + be + g);
    if (L < m.theta(a, be) * m.theta(a, be) + m.theta(g, be) * m.theta(g, be) - s2) ++bad;
    if (L < be * be / 2 - s2) ++bad;
  }
  auto ex = bfun_extremals();
  bool pins = std::fabs(ex.f_min.value - 0.0823L) <= 1e-3L && std::fabs(ex.g2_max.value - 33.026L) <= 0.01L &&
              std::fabs(ex.g_min.value - 1.09974L) <= 1e-4L && std::fabs(ex.h_min.value - 1.08041L) <= 1e-4L;
  return {bad == 0 && pins, fmt("violations=%.0f", bad) + fmt(" f=%.5f", static_cast<double>(ex.f_min.value)) +
                                fmt(" g2=%.4f", static_cast<double>(ex.g2_max.value)) +
                                fmt(" g=%.6f", static_cast<double>(ex.g_min.value)) +
                                fmt(" h=%.6f", static_cast<double>(ex.h_min.value))};
}

Outcome c9() {
  Real be_err = 0, orc_err = 0, dual_err = 0, route_err = 0;
  for (int k = 0; k < 50; ++k) {
    MarkovChain c = testing::random_birth_death(3 + k % 6, 100 + k);
    for (int x = 0; x < c.n(); ++x) be_err = std::max(be_err, std::fabs(birth_death_be(c, x) - bakry_emery_local(c, x, kInf).K));
    for (int x = 0; x + 1 < c.n(); ++x) {
      auto o = ollivier_ricci(c, x, x + 1, true);
      orc_err = std::max(orc_err, std::fabs(birth_death_orc(c, x) - o.value));
      dual_err = std::max(dual_err, std::fabs(*o.dual - o.value));
    }
  }
  const Mean m = Mean::logarithmic();
  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    MarkovChain c = testing::random_reversible(2 + k % 9, 300 + k);
    for (const auto& e : c.edges()) {
      auto o = ollivier_ricci(c, e.x, e.y, true);
      dual_err = std::max(dual_err, std::fabs(*o.dual - o.value));
    }
    Density rho{testing::random_vector(c.n(), rng).array().exp().matrix(), false};
    Vector f = testing::random_vector(c.n(), rng);
    Real b1 = B_rho(c, m, rho, f, BRoute::gamma2), b2 = B_rho(c, m, rho, f, BRoute::laplacian_split),
         b3 = B_rho(c, m, rho, f, BRoute::vector_field);
    Real sc = std::max<Real>(1, std::fabs(b1));
    route_err = std::max({route_err, std::fabs(b1 - b2) / sc, std::fabs(b1 - b3) / sc});
  }
  bool ok = be_err < 1e-7L && orc_err < 1e-9L && dual_err < 1e-8L && route_err < 1e-9L;
  return {ok, fmt("BE=%.2e", static_cast<double>(be_err)) + fmt(" ORC=%.2e", static_cast<double>(orc_err)) +
                  fmt(" dual=%.2e", static_cast<double>(dual_err)) + fmt(" B-routes=%.2e", static_cast<double>(route_err))};
}

Outcome c10() {
  auto t0 = Clock::now();
  int bad = 0;
  Real worst_gap = kInf;
  for (int k = 0; k < 50; ++k) {
    MarkovChain c = testing::random_reversible(2 + k % 7, 500 + k);
    for (Real N : {kInf, Real(4)}) {
      SearchOptions o;
      o.restarts = 200;
      o.seed = 1 + k;
      o.N = N;
      Real floor = std::isinf(N) ? universal_lower(c.q_min()) : universal_lower_findim(c.q_min(), N);
      Real v = estimate_curvature(c, Mean::logarithmic(), o).K_upper;
      worst_gap = std::min(worst_gap, v - floor);
      if (v < floor - 1e-9L) ++bad;
    }
  }
  return {bad == 0, fmt("violations=%.0f", bad) + fmt(" min(upper-floor)=%.4f", static_cast<double>(worst_gap)) +
                        fmt(" time=%.1fs", seconds_since(t0))};
}

Outcome c11() {
  bool ok = true;
  double slowest = 0;
  std::string d;
  auto all_S = [&](const SimpleGraph& g, const char* name) {
    for (int x = 0; x < g.n; ++x) {
      auto t0 = Clock::now();
      auto c = ricci_flat_at(g, x, FlatVariant::S);
      slowest = std::max(slowest, seconds_since(t0));
      ok = ok && c.outcome == FlatOutcome::flat && verify_certificate(g, c);
    }
    d += std::string(name) + " ";
  };
  all_S(simple_graph(hypercube(3, Real(1) / 3).chain), "Z2^3");
  all_S(simple_graph(cycle(6, 0.25L).chain), "C6");
  all_S(simple_graph(abelian_cayley({3, 4}, {{1, 0}, {0, 1}}, {0.125L, 0.125L}).chain), "Z3xZ4");
  SimpleGraph g = simple_graph(complement_c4_c5());
  int plain = 0, s_fail = 0;
  for (int x = 0; x < g.n; ++x) {
    auto t0 = Clock::now();
    auto p = ricci_flat_at(g, x, FlatVariant::plain);
    auto s = ricci_flat_at(g, x, FlatVariant::S);
    slowest = std::max(slowest, seconds_since(t0));
    if (p.outcome == FlatOutcome::flat && verify_certificate(g, p)) ++plain;
    if (s.outcome == FlatOutcome::not_flat) ++s_fail;
  }
  ok = ok && plain == 9 && s_fail >= 1 && slowest < 30;
  return {ok, d + fmt("complement: plain=%.0f/9", plain) + fmt(" S-fail=%.0f", s_fail) + fmt(" slowest=%.3fs", slowest)};
}

Outcome c12() {
  auto r = repro_table1({});
  std::string d;
  for (const char* row : {"three_point", "perturbed_c6", "prism"})
    d += std::string(row) + "=" + r.info[row]["observed"].get<std::string>() + " ";
  return {r.pass(), d};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<Outcome()>> crit{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (int i = 0; i < static_cast<int>(crit.size()); ++i) {
    if (only && only != i + 1) continue;
    Outcome o;
    try {
      o = crit[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
