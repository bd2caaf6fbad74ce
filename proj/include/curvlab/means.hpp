#pragma once

#include <functional>
#include <string>
#include <utility>

#include "curvlab/types.hpp"

namespace curvlab {

enum class MeanKind { logarithmic, arithmetic, geometric, custom };

class Mean {
 public:
  using Fn = std::function<Real(Real, Real)>;

  static Mean logarithmic();
  static Mean arithmetic();
  static Mean geometric();
  // d2 is taken as d1 with swapped arguments. Axioms are sampled; throws InputError on failure.
  static Mean custom(std::string name, Fn theta, Fn d1);

  MeanKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  Real theta(Real r, Real s) const;
  Real d1(Real r, Real s) const;
  Real d2(Real r, Real s) const { return d1(s, r); }
  std::pair<Real, Real> dtheta(Real r, Real s) const { return {d1(r, s), d2(r, s)}; }

 private:
  MeanKind kind_ = MeanKind::logarithmic;
  std::string name_ = "logarithmic";
  Fn theta_, d1_;
};

Real b0(const Mean& m, Real alpha, Real beta, Real gamma);
Real bfun(const Mean& m, Real alpha, Real beta, Real gamma);

// phi(t) = (e^t - 1)/t and the log-mean derivative kernel (t - 1 + e^-t)/t^2
Real expm1_over(Real t);
Real dlog_kernel(Real t);

struct Extremum {
  Real location = 0;
  Real value = 0;
  bool converged = false;
};

struct BfunExtremals {
  Extremum f_min;    // min of 2 b(e^{s/2},1,e^{s/2}) / s^2
  Extremum g2_max;   // max of symmetric b-sum ratio on the box, attained at (8 log 2, 8 log 2)
  Extremum g_min;    // theta(e^s,1) + (2/3) d2theta(1,e^s)
  Extremum h_min;    // (5/3)theta(e^s,1) + (1/3)d1theta(1,e^s)e^s + (1/3)d2theta(1,e^s)
};

Real bfun_f(Real s);
Real bfun_g2(Real s, Real t);
Real bfun_g(Real s);
Real bfun_h(Real s);
BfunExtremals bfun_extremals();

}  // namespace curvlab
