#include "nnsc/masses.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nnsc/embedding.hpp"
#include "nnsc/error.hpp"
#include "nnsc/quadrature.hpp"
#include "nnsc/quasi_spherical.hpp"

namespace nnsc {

namespace {

constexpr double kPi = std::numbers::pi;

void require_surface_dimension(const BartnikData& d, const char* what) {
  if (dimension_of(d) != 3) {
    fail(ErrorKind::kDimension,
         std::string(what) + " is defined for 2-surfaces (n = 3) only; n = " +
             std::to_string(dimension_of(d)));
  }
}

// int F(theta) dmu with dmu = 2 pi f h dtheta.
template <typename F>
double surface_integral(const AxisymBartnikData& d, F&& integrand) {
  Eigen::VectorXd values(d.grid.size());
  for (Eigen::Index i = 0; i < d.grid.size(); ++i) {
    const double th = d.grid(i);
    values(i) = 2.0 * kPi * d.f(th) * d.h(th) * integrand(i, th);
  }
  return simpson(d.grid, values);
}

double round_area(const RoundBartnikData& d) {
  return unit_sphere_volume(d.n.slice()) * std::pow(d.radius, d.n.slice());
}

}  // namespace

double area(const BartnikData& d) {
  if (const auto* r = std::get_if<RoundBartnikData>(&d)) return round_area(*r);
  const auto& a = std::get<AxisymBartnikData>(d);
  return surface_integral(a, [](Eigen::Index, double) { return 1.0; });
}

double total_mean_curvature(const BartnikData& d) {
  if (const auto* r = std::get_if<RoundBartnikData>(&d)) {
    return round_area(*r) * r->H;
  }
  const auto& a = std::get<AxisymBartnikData>(d);
  return surface_integral(a, [&](Eigen::Index, double th) { return a.H(th); });
}

double hawking_mass(const BartnikData& d) {
  require_surface_dimension(d, "Hawking mass");
  double A = 0.0, willmore = 0.0;
  if (const auto* r = std::get_if<RoundBartnikData>(&d)) {
    A = round_area(*r);
    willmore = A * r->H * r->H;
  } else {
    const auto& a = std::get<AxisymBartnikData>(d);
    A = area(d);
    willmore = surface_integral(a, [&](Eigen::Index, double th) {
      const double H = a.H(th);
      return H * H;
    });
  }
  return std::sqrt(A / (16.0 * kPi)) * (1.0 - willmore / (16.0 * kPi));
}

double brown_york_mass(const BartnikData& d) {
  require_surface_dimension(d, "Brown-York mass");
  if (const auto* r = std::get_if<RoundBartnikData>(&d)) {
    return round_area(*r) * (2.0 / r->radius - r->H) / (8.0 * kPi);
  }
  const auto& a = std::get<AxisymBartnikData>(d);
  const SampledFn H0 = embed_axisym(a);
  const double integral = surface_integral(a, [&](Eigen::Index i, double th) {
    return H0.values()(i) - a.H(th);
  });
  return integral / (8.0 * kPi);
}

MassReport mass_report(const BartnikData& d) {
  MassReport out;
  out.area = area(d);
  out.total_mean_curvature = total_mean_curvature(d);
  if (dimension_of(d) == 3) {
    out.hawking = hawking_mass(d);
    try {
      out.brown_york = brown_york_mass(d);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kPrecondition) throw;
    }
  }
  return out;
}

AdmFit adm_mass_fit(const BandMetric& g) {
  const int n = g.n.value();
  AdmFit fit;
  const double span = g.b - g.a;
  const std::array<double, 3> ts = {g.b - span / 3.0, g.b - span / 6.0, g.b};
  std::array<double, 3> estimate{};
  for (std::size_t i = 0; i < 3; ++i) {
    const Jet r = g.radius.jet(ts[i]);
    const double u = g.lapse(ts[i]);
    if (!(r.d1 > 0.0)) {
      fail(ErrorKind::kExtraction, "area radius must increase along the tail");
    }
    const double lapse = u / r.d1;
    const double scale = 0.5 * std::pow(r.value, n - 2);
    fit.radii[i] = r.value;
    fit.flux[i] = (lapse * lapse - 1.0) * scale;
    estimate[i] = (1.0 - 1.0 / (lapse * lapse)) * scale;
  }

  if (const auto* s = std::get_if<tag::Schwarzschild>(&g.tag)) {
    fit.mass = s->m;
    return fit;
  }
  if (const auto* s = std::get_if<tag::SchwarzschildBand>(&g.tag)) {
    fit.mass = s->m2;
    return fit;
  }
  if (std::holds_alternative<tag::Euclidean>(g.tag)) return fit;
  if (std::holds_alternative<tag::Hyperbolic>(g.tag) ||
      std::holds_alternative<tag::HyperbolicQS>(g.tag)) {
    fail(ErrorKind::kExtraction,
         "hyperbolic band is not asymptotically flat; use the mass aspect");
  }

  // m(r) = a + b/r through the outer two estimates, checked on the third.
  const double x1 = 1.0 / fit.radii[1], x2 = 1.0 / fit.radii[2];
  const double b = (estimate[2] - estimate[1]) / (x2 - x1);
  const double a = estimate[2] - b * x2;
  fit.mass = a;
  fit.residual = std::abs(a + b / fit.radii[0] - estimate[0]);
  const double scale = 1.0 + std::abs(a);
  if (!std::isfinite(a) || std::abs(b) * x2 > 1e-2 * scale ||
      fit.residual > 1e-3 * scale) {
    fail(ErrorKind::kExtraction,
         "no decay onto the Schwarzschild family detected (not asymptotically "
         "flat)");
  }
  return fit;
}

double adm_mass_from_tail(const BandMetric& g) { return adm_mass_fit(g).mass; }

SampledFn leaf_brown_york(const BandMetric& g) {
  if (g.n.value() != 3) {
    fail(ErrorKind::kDimension, "leaf Brown-York mass needs n = 3");
  }
  Eigen::VectorXd values(g.grid.size());
  for (Eigen::Index i = 0; i < g.grid.size(); ++i) {
    const Jet r = g.radius.jet(g.grid(i));
    values(i) = r.value * (1.0 - r.d1 / g.lapse(g.grid(i)));
  }
  return SampledFn(g.grid, values);
}

LeafLimit leaf_brown_york_limit(const BandMetric& g) {
  const SampledFn leaf = leaf_brown_york(g);
  // a + b/r + c/r^2 through three outer slices, checked on a fourth.
  const double span = g.b - g.a;
  const std::array<double, 4> ts = {g.b - span / 2.0, g.b - span / 3.0,
                                    g.b - span / 6.0, g.b};
  Eigen::Matrix3d A;
  Eigen::Vector3d y;
  for (int i = 0; i < 3; ++i) {
    const double x = 1.0 / g.radius(ts[i + 1]);
    A.row(i) << 1.0, x, x * x;
    y(i) = leaf(ts[i + 1]);
  }
  const Eigen::Vector3d c = A.partialPivLu().solve(y);
  const double x0 = 1.0 / g.radius(ts[0]);
  LeafLimit out;
  out.limit = c(0);
  out.residual = std::abs(c(0) + c(1) * x0 + c(2) * x0 * x0 - leaf(ts[0]));
  return out;
}

MassAspect hyperbolic_mass_aspect(const BandMetric& g) {
  if (!std::holds_alternative<tag::HyperbolicQS>(g.tag) || !g.deviation) {
    fail(ErrorKind::kExtraction,
         "mass aspect needs a band from qs_hyperbolic_solve");
  }
  const int n = g.n.value();
  MassAspect out;
  if (g.deviation->sign == 0) return out;

  const ExpansionConstants ex = extract_expansion_constants(g);
  out.expansion_trace = -(n - 1.0) * n * ex.limit_U;

  // With delta = U - rho and tanh(r/2) = e^{-U} (so sinh r = 1/sinh U):
  //   (sinh^2 r sinh^2 rho - 1)/r^n = -sinh(delta) sinh(2 rho + delta)
  //                                   / (sinh^2(rho + delta) r^n).
  auto scaled_limit = [&](double rho) {
    const double scaled = scaled_U_offset(g, rho);
    const double delta = scaled * std::exp(-n * rho);
    const double U = rho + delta;
    const double r = 2.0 * std::atanh(std::exp(-U));
    const double sinc = delta == 0.0 ? 1.0 : std::sinh(delta) / delta;
    const double q = std::sinh(2.0 * rho + delta) / std::pow(std::sinh(U), 2);
    return -scaled * sinc * q * std::pow(std::exp(-rho) / r, n);
  };
  const std::array<double, 3> rho = {0.6 * g.b, 0.8 * g.b, g.b};
  Eigen::Matrix<double, 3, 2> A;
  Eigen::Vector3d y;
  for (int i = 0; i < 3; ++i) {
    A.row(i) << 1.0, std::exp(-rho[i]);
    y(i) = scaled_limit(rho[i]);
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(y);
  out.fit_residual = (A * c - y).cwiseAbs().maxCoeff();
  if (!std::isfinite(c(0)) || out.fit_residual > 1e-6 * std::abs(c(0))) {
    fail(ErrorKind::kExtraction, "mass aspect limit did not settle");
  }
  out.trace = (n - 1.0) * n * c(0);
  out.mass_integral = unit_sphere_volume(n - 1) * out.trace;
  return out;
}

}  // namespace nnsc
