#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/gamma.hpp"

namespace curvlab {

struct CurvatureWitness {
  Density rho;
  Vector f;
  Real N = kInf;
  Real value = 0;
};

Real recompute(const MarkovChain& c, const Mean& m, const CurvatureWitness& w);

struct SearchOptions {
  int restarts = 20;
  int max_iters = 150;
  Real initial_step = 1;
  Real max_step = 64;
  Real min_step = 1e-9;
  Real grad_tol = 1e-10;
  Real fd_step = 1e-6;
  std::uint64_t seed = 1;
  std::optional<Real> delta;
  Real N = kInf;
  std::vector<Real> init_scales{1, 4, 8};
  // extra starting points in u = log rho; the constant density is always restart 0
  std::vector<Vector> seeds;
  int threads = 0;  // 0: CURVLAB_THREADS or hardware concurrency
};

struct RestartDiagnostics {
  Real value = kInf;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;
};

struct SearchResult {
  Real K_upper = kInf;
  CurvatureWitness best;
  int best_restart = -1;
  std::vector<RestartDiagnostics> restarts;
};

struct FixedRhoResult {
  Real value;
  Vector f;
};

FixedRhoResult min_ratio_fixed_rho(const MarkovChain& c, const Mean& m, const Density& rho, Real N);
FixedRhoResult min_ratio_forms(const QuadraticFormTriple& forms, Real N);

SearchResult estimate_curvature(const MarkovChain& c, const Mean& m, const SearchOptions& opts);
SearchResult delta_curvature_estimate(const MarkovChain& c, const Mean& m, Real delta, SearchOptions opts);

// deterministic per (seed, index) starting point, uniform on [-L, L]^n
Vector random_log_density(int n, Real L, std::uint64_t seed, std::uint64_t index);
std::vector<CurvatureWitness> random_witnesses(const MarkovChain& c, int count, std::uint64_t seed,
                                               Real log_range = 4, Real N = kInf);

struct InequalityCase {
  int index;
  Real lhs;
  Real rhs;
  Real margin;
};

struct InequalityReport {
  int checked = 0;
  int skipped = 0;
  Real min_margin = kInf;
  std::vector<InequalityCase> violations;
  bool ok() const { return violations.empty(); }
};

// B >= D/N + K A - tol (|B| + |D/N| + |K A|)
InequalityReport check_CD(const MarkovChain& c, const Mean& m, Real K, Real N,
                          const std::vector<CurvatureWitness>& witnesses, Real tol = 1e-9);
// 1/2 <P rho, Gamma_rho f> + (2C^2/Q_min) A >= C |A|(f, Delta f)
InequalityReport key_lemma_check(const MarkovChain& c, const Mean& m, Real C,
                                 const std::vector<CurvatureWitness>& witnesses, Real tol = 1e-9);

Real mlsi_functional(const MarkovChain& c, const Density& rho);

struct MlsiResult {
  Real value = kInf;
  Density rho;
  std::vector<RestartDiagnostics> restarts;
};
MlsiResult mlsi_estimate(const MarkovChain& c, const SearchOptions& opts);

int worker_count(int requested, int jobs);

}  // namespace curvlab
