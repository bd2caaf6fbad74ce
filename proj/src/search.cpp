#include "curvlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include <Eigen/Eigenvalues>

namespace curvlab {

Real recompute(const MarkovChain& c, const Mean& m, const CurvatureWitness& w) {
  return cd_ratio(c, m, w.rho, w.f, w.N);
}

FixedRhoResult min_ratio_forms(const QuadraticFormTriple& forms, Real N) {
  const Matrix& A = forms.A;
  Matrix M = forms.B;
  if (!std::isinf(N)) M -= forms.D / N;
  Eigen::SelfAdjointEigenSolver<Matrix> ea(A);
  const Vector& lam = ea.eigenvalues();
  Real cut = 1e-12L * std::max(A.trace(), Real(0));
  std::vector<int> keep;
  for (int i = 0; i < lam.size(); ++i)
    if (lam(i) > cut) keep.push_back(i);
  if (keep.empty() || !(cut > 0)) throw InputError("min_ratio_fixed_rho: A form is numerically zero");
  Matrix W(A.rows(), static_cast<int>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    W.col(static_cast<int>(k)) = ea.eigenvectors().col(keep[k]) / std::sqrt(lam(keep[k]));
  Matrix H = W.transpose() * M * W;
  H = 0.5L * (H + H.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eh(H);
  Vector f = W * eh.eigenvectors().col(0);
  f /= f.norm();
  return {eh.eigenvalues()(0), f};
}

FixedRhoResult min_ratio_fixed_rho(const MarkovChain& c, const Mean& m, const Density& rho, Real N) {
  return min_ratio_forms(quadratic_forms(c, m, rho), N);
}

int worker_count(int requested, int jobs) {
  int cap = requested;
  if (cap <= 0) {
    cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("CURVLAB_THREADS")) {
      int v = std::atoi(env);
      if (v > 0) cap = v;
    }
  }
  return std::max(1, std::min(cap, jobs));
}

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Real uniform01(std::uint64_t& s) { return Real(splitmix(s) >> 11) * 0x1.0p-53L; }

template <class Job>
void run_parallel(int jobs, int requested, Job job) {
  int workers = worker_count(requested, jobs);
  if (workers == 1) {
    for (int i = 0; i < jobs; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < jobs; i = next++) job(i);
    });
  for (auto& th : pool) th.join();
}

// Ratio (B - D/N)/A for fixed f as a function of rho, O(|E|) per call.
class FixedF {
 public:
  FixedF(const MarkovChain& c, const Mean& m, const Vector& f, Real N) : c_(c), m_(m), N_(N) {
    Vector Lf = laplacian(c, f);
    D_ = Lf.cwiseProduct(Lf).cwiseProduct(c.pi());
    for (const auto& e : c.edges()) {
      Real w = 0.5L * (c.Q(e.x, e.y) * c.pi(e.x) + c.Q(e.y, e.x) * c.pi(e.y));
      Real df = f(e.y) - f(e.x);
      terms_.push_back({e.x, e.y, w, df * df, df * (Lf(e.y) - Lf(e.x))});
    }
  }

  Real operator()(const Vector& rho) const {
    Vector Lrho = laplacian(c_, rho);
    Real A = 0, B = 0;
    for (const auto& t : terms_) {
      Real rx = rho(t.x), ry = rho(t.y);
      Real hat = m_.theta(rx, ry);
      A += hat * t.w * t.df2;
      Real g = Lrho(t.x) * c_.pi(t.x) * m_.d1(rx, ry) * c_.Q(t.x, t.y) +
               Lrho(t.y) * c_.pi(t.y) * m_.d1(ry, rx) * c_.Q(t.y, t.x);
      B += 0.5L * g * t.df2 - hat * t.w * t.dfdl;
    }
    Real D = std::isinf(N_) ? Real(0) : rho.dot(D_) / N_;
    return (B - D) / A;
  }

 private:
  struct Term {
    int x, y;
    Real w, df2, dfdl;
  };
  const MarkovChain& c_;
  const Mean& m_;
  Real N_;
  Vector D_;
  std::vector<Term> terms_;
};

constexpr Real kLogFloor = -4000;

void shift_log(Vector& u) {
  u.array() -= u.maxCoeff();
  u = u.cwiseMax(kLogFloor);
}

std::vector<Edge> support_edges(const MarkovChain& c, const Vector& f) {
  Real tol = 1e-12L * f.cwiseAbs().maxCoeff();
  std::vector<Edge> out;
  for (const auto& e : c.edges())
    if (std::abs(f(e.y) - f(e.x)) > tol) out.push_back(e);
  return out;
}

bool feasible(const Vector& u, const std::vector<Edge>& S, Real delta) {
  for (const auto& e : S)
    if (std::abs(u(e.y) - u(e.x)) > delta * (1 + 1e-12L) + 1e-15L) return false;
  return true;
}

// cyclic pairwise clipping, then uniform contraction as a guaranteed fallback
Vector project_box(Vector u, const std::vector<Edge>& S, Real delta) {
  for (int sweep = 0; sweep < 200 && !feasible(u, S, delta); ++sweep)
    for (const auto& e : S) {
      Real d = u(e.y) - u(e.x);
      Real excess = std::abs(d) - delta;
      if (excess > 0) {
        Real s = d > 0 ? 1 : -1;
        u(e.y) -= 0.5L * s * excess;
        u(e.x) += 0.5L * s * excess;
      }
    }
  if (!feasible(u, S, delta)) {
    Real M = 0;
    for (const auto& e : S) M = std::max(M, std::abs(u(e.y) - u(e.x)));
    Real mean = u.mean();
    u = (u.array() - mean) * (delta / M) + mean;
  }
  return u;
}

struct Eval {
  Vector u;
  Real value;
  Vector f;
};

class Objective {
 public:
  Objective(const MarkovChain& c, const Mean& m, const SearchOptions& o) : c_(c), m_(m), o_(o) {}

  Eval operator()(Vector u) const {
    shift_log(u);
    if (!o_.delta) {
      auto r = min_ratio_fixed_rho(c_, m_, Density::from_log(u), o_.N);
      return {u, r.value, r.f};
    }
    const Real delta = *o_.delta;
    std::vector<Edge> S;
    auto r = min_ratio_fixed_rho(c_, m_, Density::from_log(u), o_.N);
    for (int round = 0; round < 6; ++round) {
      auto supp = support_edges(c_, r.f);
      if (feasible(u, supp, delta)) return {u, r.value, r.f};
      for (const auto& e : supp) S.push_back(e);
      u = project_box(u, round < 5 ? S : c_.edges(), delta);
      shift_log(u);
      r = min_ratio_fixed_rho(c_, m_, Density::from_log(u), o_.N);
    }
    u = project_box(u, c_.edges(), delta);
    shift_log(u);
    r = min_ratio_fixed_rho(c_, m_, Density::from_log(u), o_.N);
    return {u, r.value, r.f};
  }

  Vector gradient(const Eval& at) const {
    FixedF F(c_, m_, at.f, o_.N);
    const int n = c_.n();
    Vector g(n);
    Vector rho = at.u.array().exp().matrix();
    const Real h = o_.fd_step;
    for (int i = 0; i < n; ++i) {
      Vector rp = rho, rm = rho;
      rp(i) *= std::exp(h);
      rm(i) *= std::exp(-h);
      g(i) = (F(rp) - F(rm)) / (2 * h);
    }
    return g;
  }

 private:
  const MarkovChain& c_;
  const Mean& m_;
  const SearchOptions& o_;
};

struct Descent {
  Eval best;
  RestartDiagnostics diag;
};

template <class Obj>
Descent descend(const Obj& obj, Vector u0, const SearchOptions& o) {
  Descent d;
  Eval cur = obj(std::move(u0));
  Real step = o.initial_step;
  int it = 0;
  d.diag.stop_reason = "max_iters";
  for (; it < o.max_iters; ++it) {
    Vector g = obj.gradient(cur);
    Real gn = g.norm();
    if (!std::isfinite(gn)) {
      d.diag.stop_reason = "nonfinite_gradient";
      break;
    }
    if (gn < o.grad_tol) {
      d.diag.converged = true;
      d.diag.stop_reason = "gradient";
      break;
    }
    Vector dir = -g / gn;
    bool accepted = false;
    while (step >= o.min_step) {
      Eval trial = obj(cur.u + step * dir);
      if (std::isfinite(trial.value) && trial.value < cur.value - 1e-4L * step * gn) {
        cur = std::move(trial);
        accepted = true;
        break;
      }
      step *= 0.5L;
    }
    if (!accepted) {
      d.diag.converged = true;
      d.diag.stop_reason = "step";
      break;
    }
    step = std::min(o.max_step, 2 * step);
  }
  d.diag.iterations = it;
  d.diag.value = cur.value;
  d.best = std::move(cur);
  return d;
}

Vector start_point(int n, int restart, const SearchOptions& o) {
  if (restart == 0) return Vector::Zero(n);
  int k = restart - 1;
  if (k < static_cast<int>(o.seeds.size())) {
    if (o.seeds[k].size() != n) throw InputError("search seed has wrong length");
    return o.seeds[k];
  }
  k -= static_cast<int>(o.seeds.size());
  Real L = o.init_scales[static_cast<std::size_t>(k) % o.init_scales.size()];
  return random_log_density(n, L, o.seed, static_cast<std::uint64_t>(restart));
}

}  // namespace

Vector random_log_density(int n, Real L, std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0xD1B54A32D192ED03ull * (index + 1));
  splitmix(s);
  Vector u(n);
  for (int i = 0; i < n; ++i) u(i) = -L + 2 * L * uniform01(s);
  return u;
}

SearchResult estimate_curvature(const MarkovChain& c, const Mean& m, const SearchOptions& opts) {
  require_valid(c);
  if (opts.restarts < 1) throw InputError("search: restarts must be >= 1");
  if (opts.init_scales.empty()) throw InputError("search: init_scales empty");
  Objective obj(c, m, opts);
  std::vector<Descent> runs(opts.restarts);
  run_parallel(opts.restarts, opts.threads,
               [&](int i) { runs[i] = descend(obj, start_point(c.n(), i, opts), opts); });
  SearchResult res;
  for (int i = 0; i < opts.restarts; ++i) {
    res.restarts.push_back(runs[i].diag);
    if (runs[i].best.value < res.K_upper) {
      res.K_upper = runs[i].best.value;
      res.best_restart = i;
    }
  }
  const Eval& b = runs[res.best_restart].best;
  res.best = CurvatureWitness{Density::from_log(b.u), b.f, opts.N, b.value};
  // report the value as re-evaluated from the stored witness
  res.best.value = res.K_upper = recompute(c, m, res.best);
  return res;
}

SearchResult delta_curvature_estimate(const MarkovChain& c, const Mean& m, Real delta, SearchOptions opts) {
  if (!(delta >= 0)) throw InputError("delta must be nonnegative");
  if (!std::isinf(delta)) opts.delta = delta;
  return estimate_curvature(c, m, opts);
}

std::vector<CurvatureWitness> random_witnesses(const MarkovChain& c, int count, std::uint64_t seed,
                                               Real log_range, Real N) {
  std::vector<CurvatureWitness> out;
  for (int i = 0; i < count; ++i) {
    Vector u = random_log_density(c.n(), log_range, seed, 2 * static_cast<std::uint64_t>(i));
    Vector f = random_log_density(c.n(), 1, seed, 2 * static_cast<std::uint64_t>(i) + 1);
    out.push_back({Density::from_log(u), f, N, 0});
  }
  return out;
}

InequalityReport check_CD(const MarkovChain& c, const Mean& m, Real K, Real N,
                          const std::vector<CurvatureWitness>& ws, Real tol) {
  InequalityReport r;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const auto& w = ws[i];
    Real A = A_rho(c, m, w.rho, w.f);
    if (!(A > degeneracy_threshold(c, m, w.rho, w.f))) {
      ++r.skipped;
      continue;
    }
    Real B = B_rho(c, m, w.rho, w.f);
    Real D = std::isinf(N) ? Real(0) : D_rho(c, w.rho, w.f) / N;
    Real rhs = D + K * A;
    Real margin = B - rhs;
    Real scale = std::abs(B) + std::abs(D) + std::abs(K * A);
    ++r.checked;
    r.min_margin = std::min(r.min_margin, margin / std::max(scale, std::numeric_limits<Real>::min()));
    if (margin < -tol * scale) r.violations.push_back({static_cast<int>(i), B, rhs, margin});
  }
  return r;
}

InequalityReport key_lemma_check(const MarkovChain& c, const Mean& m, Real C,
                                 const std::vector<CurvatureWitness>& ws, Real tol) {
  if (!(C > 0)) throw InputError("key_lemma_check: C must be positive");
  InequalityReport r;
  const Real qmin = c.q_min();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const auto& w = ws[i];
    Vector Prho = w.rho.values + laplacian(c, w.rho.values);
    Real lhs = 0.5L * inner_pi(c, Prho, gamma_rho(c, m, w.rho, w.f, w.f)) +
               (2 * C * C / qmin) * A_rho(c, m, w.rho, w.f);
    auto [p, q] = A_pm(c, m, w.rho, w.f);
    Real rhs = C * (p + q);
    Real margin = lhs - rhs;
    Real scale = std::abs(lhs) + std::abs(rhs);
    ++r.checked;
    r.min_margin = std::min(r.min_margin, scale > 0 ? margin / scale : Real(0));
    if (margin < -tol * scale) r.violations.push_back({static_cast<int>(i), lhs, rhs, margin});
  }
  return r;
}

Real mlsi_functional(const MarkovChain& c, const Density& rho) {
  require_positive(rho, c.n());
  Vector pi = c.pi() / c.pi().sum();
  Vector r = rho.values / rho.values.dot(pi);
  Vector lr = r.array().log().matrix();
  Real ent = (r.array() * lr.array() * pi.array()).sum();
  Real E = 0;
  for (const auto& e : c.edges()) {
    Real w = 0.5L * (c.Q(e.x, e.y) * pi(e.x) + c.Q(e.y, e.x) * pi(e.y));
    E += (r(e.y) - r(e.x)) * (lr(e.y) - lr(e.x)) * w;
  }
  if (!(ent > 1e-12L)) throw DegenerateWitness("mlsi_functional: entropy is numerically zero");
  return E / ent;
}

namespace {

class MlsiObjective {
 public:
  MlsiObjective(const MarkovChain& c, const SearchOptions& o) : c_(c), o_(o) {}
  Real value(const Vector& u) const {
    try {
      return mlsi_functional(c_, Density::from_log(u));
    } catch (const DegenerateWitness&) {
      return kInf;
    }
  }
  Eval operator()(Vector u) const {
    shift_log(u);
    return {u, value(u), Vector()};
  }
  Vector gradient(const Eval& at) const {
    Vector g(at.u.size());
    const Real h = o_.fd_step;
    for (int i = 0; i < at.u.size(); ++i) {
      Vector up = at.u, um = at.u;
      up(i) += h;
      um(i) -= h;
      g(i) = (value(up) - value(um)) / (2 * h);
    }
    return g;
  }

 private:
  const MarkovChain& c_;
  const SearchOptions& o_;
};

}  // namespace

MlsiResult mlsi_estimate(const MarkovChain& c, const SearchOptions& opts) {
  require_valid(c);
  MlsiObjective obj(c, opts);
  std::vector<Descent> runs(opts.restarts);
  run_parallel(opts.restarts, opts.threads, [&](int i) {
    // restart 0 would be the degenerate constant density
    runs[i] = descend(obj, start_point(c.n(), i + 1, opts), opts);
  });
  MlsiResult res;
  int best = -1;
  for (int i = 0; i < opts.restarts; ++i) {
    res.restarts.push_back(runs[i].diag);
    if (runs[i].best.value < res.value) res.value = runs[i].best.value, best = i;
  }
  if (best >= 0) res.rho = normalize(c, Density::from_log(runs[best].best.u));
  return res;
}

}  // namespace curvlab
