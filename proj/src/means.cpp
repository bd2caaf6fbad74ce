#include "curvlab/means.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/tools/minima.hpp>

namespace curvlab {

Real expm1_over(Real t) {
  if (std::abs(t) < 1e-4L) return 1 + t / 2 + t * t / 6 + t * t * t / 24;
  return std::expm1(t) / t;
}

Real dlog_kernel(Real t) {
  if (std::abs(t) < 1e-4L) return 0.5L - t / 6 + t * t / 24 - t * t * t / 120;
  // t - 1 + e^-t = expm1(-t) + t
  return (std::expm1(-t) + t) / (t * t);
}

namespace {

Real log_theta(Real r, Real s) {
  if (r <= 0 || s <= 0) return 0;
  return r * expm1_over(std::log(s) - std::log(r));
}

Real log_d1(Real r, Real s) {
  if (r <= 0 || s <= 0) throw InputError("mean derivative requires positive arguments");
  return dlog_kernel(std::log(r) - std::log(s));
}

}  // namespace

Mean Mean::logarithmic() {
  Mean m;
  m.kind_ = MeanKind::logarithmic;
  m.name_ = "logarithmic";
  return m;
}

Mean Mean::arithmetic() {
  Mean m;
  m.kind_ = MeanKind::arithmetic;
  m.name_ = "arithmetic";
  return m;
}

Mean Mean::geometric() {
  Mean m;
  m.kind_ = MeanKind::geometric;
  m.name_ = "geometric";
  return m;
}

Mean Mean::custom(std::string name, Fn theta, Fn d1) {
  Mean m;
  m.kind_ = MeanKind::custom;
  m.name_ = std::move(name);
  m.theta_ = std::move(theta);
  m.d1_ = std::move(d1);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> U(-6, 6);
  auto fail = [&](const std::string& what) { throw InputError("custom mean '" + m.name_ + "': " + what); };
  if (std::abs(m.theta(1, 1) - 1) > 1e-10L) fail("theta(1,1) != 1");
  for (int i = 0; i < 200; ++i) {
    Real r = std::exp(Real(U(rng))), s = std::exp(Real(U(rng))), lam = std::exp(Real(U(rng)));
    Real t = m.theta(r, s);
    Real scale = std::max(r, s);
    if (std::abs(t - m.theta(s, r)) > 1e-10L * scale) fail("not symmetric");
    if (std::abs(m.theta(lam * r, lam * s) - lam * t) > 1e-10L * lam * scale) fail("not homogeneous");
    if (t < std::min(r, s) * (1 - 1e-12L) || t > scale * (1 + 1e-12L)) fail("not between min and max");
    if (m.d1(r, s) < -1e-12L) fail("not monotone");
    if (std::abs(m.d1(r, s) * r + m.d2(r, s) * s - t) > 1e-9L * scale) fail("Euler identity fails");
  }
  return m;
}

Real Mean::theta(Real r, Real s) const {
  switch (kind_) {
    case MeanKind::logarithmic: return log_theta(r, s);
    case MeanKind::arithmetic: return 0.5L * (r + s);
    case MeanKind::geometric: return std::sqrt(r * s);
    case MeanKind::custom: return theta_(r, s);
  }
  return 0;
}

Real Mean::d1(Real r, Real s) const {
  switch (kind_) {
    case MeanKind::logarithmic: return log_d1(r, s);
    case MeanKind::arithmetic: return 0.5L;
    case MeanKind::geometric:
      if (r <= 0 || s <= 0) throw InputError("mean derivative requires positive arguments");
      return 0.5L * std::sqrt(s / r);
    case MeanKind::custom: return d1_(r, s);
  }
  return 0;
}

Real b0(const Mean& m, Real alpha, Real beta, Real gamma) {
  return m.d1(beta, gamma) * alpha + m.d2(beta, gamma) * beta;
}

Real bfun(const Mean& m, Real alpha, Real beta, Real gamma) {
  return b0(m, alpha, beta, gamma) - m.theta(alpha, beta);
}

Real bfun_f(Real s) {
  if (std::abs(s) < 1e-3L) return 1.0L / 6 + s / 24 + 13 * s * s / 1440;
  const Mean m = Mean::logarithmic();
  Real e = std::exp(s / 2);
  return 2 * bfun(m, e, 1, e) / (s * s);
}

Real bfun_g2(Real s, Real t) {
  const Mean m = Mean::logarithmic();
  Real a = std::exp(s), c = std::exp(t);
  return (bfun(m, a, 1, c) + bfun(m, c, 1, a)) / ((s + t) * (s + t));
}

Real bfun_g(Real s) {
  const Mean m = Mean::logarithmic();
  Real e = std::exp(s);
  return m.theta(e, 1) + (2.0L / 3) * m.d2(1, e);
}

Real bfun_h(Real s) {
  const Mean m = Mean::logarithmic();
  Real e = std::exp(s);
  return (5.0L / 3) * m.theta(e, 1) + (1.0L / 3) * m.d1(1, e) * e + (1.0L / 3) * m.d2(1, e);
}

namespace {

template <class F>
Extremum minimize_1d(F fn, Real lo, Real hi) {
  // coarse scan then Brent on the bracketing cell
  const int K = 400;
  Real best = kInf, at = lo;
  for (int i = 0; i <= K; ++i) {
    Real s = lo + (hi - lo) * i / K;
    Real v = fn(s);
    if (v < best) best = v, at = s;
  }
  Real h = (hi - lo) / K;
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::brent_find_minima(fn, std::max(lo, at - h), std::min(hi, at + h),
                                                 std::numeric_limits<Real>::digits / 2, iters);
  Extremum e;
  e.location = r.first;
  e.value = r.second;
  e.converged = iters < 200 && r.second <= best;
  return e;
}

}  // namespace

BfunExtremals bfun_extremals() {
  BfunExtremals out;
  out.f_min = minimize_1d(bfun_f, -20, 20);
  out.g_min = minimize_1d(bfun_g, -10, 10);
  out.h_min = minimize_1d(bfun_h, -10, 10);

  // the ratio is bounded on the box |s|,|t| <= 8 log 2; scan for its maximum
  const Real R = 8 * std::log(Real(2));
  const int K = 80;
  Real best = -kInf, bs = 0, bt = 0;
  for (int i = 0; i <= K; ++i)
    for (int j = 0; j <= K; ++j) {
      Real s = -R + 2 * R * i / K, t = -R + 2 * R * j / K;
      if (std::abs(s + t) < 1e-3L) continue;
      Real v = bfun_g2(s, t);
      if (v > best) best = v, bs = s, bt = t;
    }
  out.g2_max.location = bs;
  out.g2_max.value = best;
  out.g2_max.converged = std::abs(bs - bt) < 1e-12L && std::abs(std::abs(bs) - R) < 1e-12L;
  return out;
}

}  // namespace curvlab
