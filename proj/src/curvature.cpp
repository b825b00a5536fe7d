#include "nnsc/curvature.hpp"

#include <cmath>
#include <string>

#include "nnsc/error.hpp"

namespace nnsc {

namespace {

void require_in_domain(const BandMetric& g, double t) {
  if (!g.contains(t)) {
    fail(ErrorKind::kDomain, "slice t = " + std::to_string(t) +
                                 " outside the band [" + std::to_string(g.a) +
                                 ", " + std::to_string(g.b) + "]");
  }
}

double warped_scalar(int n, const Jet& u, const Jet& r) {
  const double k = n - 1.0;
  const double rs = r.d1 / u.value;  // dr/ds
  const double d_rs = r.d2 / u.value - r.d1 * u.d1 / (u.value * u.value);
  return k * (k - 1.0) * (1.0 - rs * rs) / (r.value * r.value) -
         2.0 * k / (u.value * r.value) * d_rs;
}

}  // namespace

SliceGeometry slice_geometry(const BandMetric& g, double t) {
  require_in_domain(g, t);
  const Jet u = g.lapse.jet(t);
  const Jet r = g.radius.jet(t);
  const double k = g.n.slice();
  SliceGeometry s;
  s.A_principal = r.d1 / (u.value * r.value);
  s.H = k * s.A_principal;
  s.R_bar = k * (k - 1.0) / (r.value * r.value);
  return s;
}

double scalar_curvature_at(const BandMetric& g, double t) {
  require_in_domain(g, t);
  return warped_scalar(g.n.value(), g.lapse.jet(t), g.radius.jet(t));
}

double gauss_scalar_curvature_at(const BandMetric& g, double t) {
  require_in_domain(g, t);
  const Jet u = g.lapse.jet(t);
  const Jet r = g.radius.jet(t);
  const double k = g.n.slice();
  const double a = r.d1 / (u.value * r.value);
  const double H = k * a;
  // d/dt of r'/(u r) by the quotient rule.
  const double denom = u.value * r.value;
  const double d_denom = u.d1 * r.value + u.value * r.d1;
  const double da_dt = (r.d2 * denom - r.d1 * d_denom) / (denom * denom);
  const double dH_ds = k * da_dt / u.value;
  const double R_bar = k * (k - 1.0) / (r.value * r.value);
  return R_bar - 2.0 * dH_ds - H * H - k * a * a;
}

SampledFn scalar_curvature_band(const BandMetric& g) {
  if (g.grid.size() < 4) {
    fail(ErrorKind::kResolution, "band grid needs at least four slices");
  }
  Eigen::VectorXd R(g.grid.size());
  for (Eigen::Index i = 0; i < g.grid.size(); ++i) {
    R(i) = scalar_curvature_at(g, g.grid(i));
    if (!std::isfinite(R(i))) {
      fail(ErrorKind::kResolution, "scalar curvature not finite at t = " +
                                       std::to_string(g.grid(i)));
    }
  }
  return SampledFn(g.grid, R);
}

namespace {

struct FdJet {
  double value, d1, d2;
};

// Second-order differences of f at t with step h, one-sided if the centred
// stencil would leave [a, b].
template <typename F>
FdJet differences(const F& f, double t, double h, double a, double b) {
  const double f0 = f(t);
  if (t - h >= a && t + h <= b) {
    const double fp = f(t + h), fm = f(t - h);
    return {f0, (fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
  }
  const double s = (t - h < a) ? 1.0 : -1.0;
  const double f1 = f(t + s * h), f2 = f(t + 2.0 * s * h),
               f3 = f(t + 3.0 * s * h);
  return {f0, s * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h),
          (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h)};
}

double fd_scalar(const BandMetric& g, double t, double h) {
  auto u = [&g](double x) { return g.lapse(x); };
  auto r = [&g](double x) { return g.radius(x); };
  const FdJet du = differences(u, t, h, g.a, g.b);
  const FdJet dr = differences(r, t, h, g.a, g.b);
  return warped_scalar(g.n.value(), Jet{du.value, du.d1, du.d2},
                       Jet{dr.value, dr.d1, dr.d2});
}

}  // namespace

double scalar_curvature_fd_at(const BandMetric& g, double t,
                              const FdOptions& opts) {
  require_in_domain(g, t);
  const double h = opts.step;
  if (!(h > 0.0) || 3.0 * h > g.b - g.a) {
    fail(ErrorKind::kResolution, "finite-difference step too large for band");
  }
  const double coarse = fd_scalar(g, t, h);
  const double fine = fd_scalar(g, t, 0.5 * h);
  const double extrapolated = (4.0 * fine - coarse) / 3.0;
  if (!std::isfinite(extrapolated) ||
      std::abs(fine - coarse) >
          opts.richardson_tolerance * (1.0 + std::abs(extrapolated))) {
    fail(ErrorKind::kResolution,
         "Richardson levels disagree at t = " + std::to_string(t) +
             "; reduce the finite-difference step");
  }
  return extrapolated;
}

SampledFn scalar_curvature_fd(const BandMetric& g, const FdOptions& opts) {
  Eigen::VectorXd R(g.grid.size());
  for (Eigen::Index i = 0; i < g.grid.size(); ++i) {
    R(i) = scalar_curvature_fd_at(g, g.grid(i), opts);
  }
  return SampledFn(g.grid, R);
}

double CurvatureReport::max_gauss_residual() const {
  return gauss_residual.size() ? gauss_residual.cwiseAbs().maxCoeff() : 0.0;
}

CurvatureReport curvature_report(const BandMetric& g) {
  const Eigen::Index size = g.grid.size();
  CurvatureReport rep;
  rep.t = g.grid;
  rep.H.resize(size);
  rep.A_principal.resize(size);
  rep.R_bar.resize(size);
  rep.R.resize(size);
  rep.gauss_residual.resize(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double t = g.grid(i);
    const SliceGeometry s = slice_geometry(g, t);
    rep.H(i) = s.H;
    rep.A_principal(i) = s.A_principal;
    rep.R_bar(i) = s.R_bar;
    rep.R(i) = scalar_curvature_at(g, t);
    rep.gauss_residual(i) = gauss_scalar_curvature_at(g, t) - rep.R(i);
  }
  return rep;
}

}  // namespace nnsc
