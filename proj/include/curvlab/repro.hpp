#pragma once

#include <map>
#include <string>
#include <vector>

#include "curvlab/chain_io.hpp"

namespace curvlab {

// source: "reference" (stated value), "exact" (closed form), "oracle" (independent computation)
struct ReproCheck {
  std::string name;
  std::string relation;  // eq, le, ge, lt, gt, sign
  Real observed = 0;
  Real expected = 0;
  Real tol = 0;
  std::string source;
  bool pass = false;
  std::string note;
};

struct ReproReport {
  std::string id;
  json params = json::object();
  std::vector<ReproCheck> checks;
  json info = json::object();
  bool pass() const;
  json to_json() const;
};

struct ReproParams {
  std::map<std::string, Real> values;
  Real get(const std::string& key, Real fallback) const;
};

const std::vector<std::string>& repro_cases();
ReproReport run_repro(const std::string& id, const ReproParams& p = {});

ReproReport repro_three_point(const ReproParams& p);
ReproReport repro_perturbed_c6(const ReproParams& p);
ReproReport repro_prism(const ReproParams& p);
ReproReport repro_cycle_sandwich(const ReproParams& p);
ReproReport repro_hypercube(const ReproParams& p);
ReproReport repro_bernoulli_laplace(const ReproParams& p);
ReproReport repro_table1(const ReproParams& p);

// three-point witness ratio and its searched improvement
struct ThreePointDivergence {
  Real table_ratio = 0;
  Real searched_ratio = 0;
  Real a_cross_scaled = 0;  // A_rho(f, Delta f) / alpha
};
ThreePointDivergence three_point_divergence(Real alpha, int restarts = 4);

struct PrismWitnessValue {
  Real evaluated = 0;
  Real closed_form = 0;
  Real lambda = 0;
};
PrismWitnessValue prism_witness_value(int base_n, Real eps_hat, Real rho1, Real rho2);

}  // namespace curvlab
