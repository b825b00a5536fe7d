#include "nnsc/band_metric.hpp"

#include <cmath>
#include <string>

#include "nnsc/error.hpp"
#include "nnsc/quadrature.hpp"

namespace nnsc {

Dimension::Dimension(int n) : n_(n) {
  if (n < kMin || n > kMax) {
    fail(ErrorKind::kDimension, "n out of range [3,7]: " + std::to_string(n));
  }
}

double conformal_constant(Dimension n) {
  const double d = n.value();
  return 4.0 * (d - 1.0) / (d - 2.0);
}

bool BandMetric::contains(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(b - a));
  return t >= a - slack && t <= b + slack;
}

void validate(const BandMetric& g) {
  if (!(g.b > g.a)) fail(ErrorKind::kDomain, "band needs a < b");
  if (g.grid.size() < 2) fail(ErrorKind::kResolution, "band grid too short");
  for (Eigen::Index i = 0; i < g.grid.size(); ++i) {
    const double t = g.grid(i);
    const double u = g.lapse(t);
    const double r = g.radius(t);
    if (!(u > 0.0) || !(r > 0.0) || !std::isfinite(u) || !std::isfinite(r)) {
      fail(ErrorKind::kDomain, "band lapse and radius must be positive; t = " +
                                   std::to_string(t));
    }
  }
}

BandMetric euclidean_band(Dimension n, double r_a, double r_b,
                          Eigen::Index intervals) {
  BandMetric g;
  g.n = n;
  g.a = r_a;
  g.b = r_b;
  g.lapse = Profile::constant(1.0);
  g.radius = Profile::analytic([](double t) { return Jet{t, 1.0, 0.0}; });
  g.grid = uniform_grid(r_a, r_b, intervals);
  g.tag = tag::Euclidean{};
  validate(g);
  return g;
}

BandMetric hyperbolic_band(Dimension n, double kappa, double t_a, double t_b,
                           Eigen::Index intervals) {
  if (!(kappa > 0.0)) fail(ErrorKind::kDomain, "kappa must be positive");
  BandMetric g;
  g.n = n;
  g.a = t_a;
  g.b = t_b;
  g.lapse = Profile::constant(1.0);
  g.radius = Profile::analytic([kappa](double t) {
    const double s = std::sinh(kappa * t);
    return Jet{s / kappa, std::cosh(kappa * t), kappa * s};
  });
  g.grid = uniform_grid(t_a, t_b, intervals);
  g.tag = tag::Hyperbolic{kappa};
  validate(g);
  return g;
}

namespace {

// Lapse (1 - 2 m(r) r^{2-n})^{-1/2} and its derivatives from the 2-jet of m.
Jet mass_lapse(int n, double r, const Jet& m) {
  const double p = std::pow(r, 2 - n);
  const double dp = (2 - n) * p / r;
  const double ddp = (2 - n) * (1 - n) * p / (r * r);
  const double w = 1.0 - 2.0 * m.value * p;
  const double dw = -2.0 * (m.d1 * p + m.value * dp);
  const double ddw = -2.0 * (m.d2 * p + 2.0 * m.d1 * dp + m.value * ddp);
  if (!(w > 0.0)) {
    fail(ErrorKind::kConstruction,
         "1 - 2m(r)/r^{n-2} <= 0 at r = " + std::to_string(r));
  }
  const double u = 1.0 / std::sqrt(w);
  const double du = -0.5 * dw * u * u * u;
  const double ddu = -0.5 * ddw * u * u * u + 0.75 * dw * dw * std::pow(u, 5);
  return Jet{u, du, ddu};
}

}  // namespace

BandMetric schwarzschild_metric_band(Dimension n, double m, double r_a,
                                     double r_b, Eigen::Index intervals) {
  BandMetric g = mass_function_band(n, Profile::constant(m), r_a, r_b,
                                    intervals);
  g.tag = tag::Schwarzschild{m};
  return g;
}

BandMetric mass_function_band(Dimension n, const Profile& mass, double r_a,
                              double r_b, Eigen::Index intervals) {
  if (!(r_a > 0.0)) fail(ErrorKind::kDomain, "area radius must be positive");
  BandMetric g;
  g.n = n;
  g.a = r_a;
  g.b = r_b;
  const int dim = n.value();
  g.lapse = Profile::analytic(
      [dim, mass](double r) { return mass_lapse(dim, r, mass.jet(r)); });
  g.radius = Profile::analytic([](double t) { return Jet{t, 1.0, 0.0}; });
  g.grid = uniform_grid(r_a, r_b, intervals);
  validate(g);
  return g;
}

BandMetric sampled_band(Dimension n, const Eigen::VectorXd& t,
                        const Eigen::VectorXd& u, const Eigen::VectorXd& r) {
  BandMetric g;
  g.n = n;
  g.lapse = Profile::sampled(SampledFn(t, u));
  g.radius = Profile::sampled(SampledFn(t, r));
  g.grid = t;
  g.a = t(0);
  g.b = t(t.size() - 1);
  validate(g);
  return g;
}

ArclengthMap::ArclengthMap(const BandMetric& g, double anchor,
                           Eigen::Index intervals)
    : lapse_(g.lapse) {
  Eigen::VectorXd t = uniform_grid(g.a, g.b, intervals);
  Eigen::VectorXd s(t.size());
  s(0) = 0.0;
  auto u = [this](double x) { return lapse_(x); };
  for (Eigen::Index i = 1; i < t.size(); ++i) {
    s(i) = s(i - 1) + gauss_legendre(u, t(i - 1), t(i));
  }
  const double shift =
      SampledFn(t, s)(anchor);  // proper distance from a to the anchor
  s.array() -= shift;
  s_ = SampledFn(t, s);
  t_ = SampledFn(s, t);
  s_min_ = s(0);
  s_max_ = s(s.size() - 1);
}

double ArclengthMap::s_of_t(double t) const { return s_(t); }

double ArclengthMap::t_of_s(double s) const {
  double t = t_(s);
  for (int k = 0; k < 3; ++k) {
    const double u = lapse_(t);
    t -= (s_(t) - s) / u;
  }
  return t;
}

}  // namespace nnsc
