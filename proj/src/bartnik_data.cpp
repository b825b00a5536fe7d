#include "nnsc/bartnik_data.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nnsc/error.hpp"

namespace nnsc {

RoundBartnikData make_round(Dimension n, double radius, double H) {
  if (!(radius > 0.0) || !std::isfinite(H)) {
    fail(ErrorKind::kDomain, "round data needs radius > 0 and finite H");
  }
  return RoundBartnikData{n, radius, H};
}

void validate(const AxisymBartnikData& d, double tol) {
  const Eigen::Index size = d.grid.size();
  if (size < 3 || (size - 1) % 2 != 0) {
    fail(ErrorKind::kPrecondition,
         "axisymmetric grid needs an even number of intervals");
  }
  constexpr double pi = std::numbers::pi;
  if (std::abs(d.grid(0)) > 1e-14 || std::abs(d.grid(size - 1) - pi) > 1e-12) {
    fail(ErrorKind::kPrecondition, "axisymmetric grid must span [0, pi]");
  }
  for (Eigen::Index i = 0; i < size; ++i) {
    const double th = d.grid(i);
    if (!(d.f(th) > 0.0)) {
      fail(ErrorKind::kPrecondition,
           "f must be positive; theta = " + std::to_string(th));
    }
    if (i > 0 && i + 1 < size && !(d.h(th) > 0.0)) {
      fail(ErrorKind::kPrecondition,
           "h must be positive inside (0, pi); theta = " + std::to_string(th));
    }
  }
  const Jet h0 = d.h.jet(0.0), h1 = d.h.jet(pi);
  const double f0 = d.f(0.0), f1 = d.f(pi);
  const double scale = std::max(f0, f1);
  if (std::abs(h0.value) > tol * scale || std::abs(h1.value) > tol * scale ||
      std::abs(h0.d1 - f0) > 1e3 * tol * scale ||
      std::abs(h1.d1 + f1) > 1e3 * tol * scale) {
    fail(ErrorKind::kPrecondition, "pole closure violated");
  }
}

AxisymBartnikData round_axisym(double radius, const Profile& H,
                               Eigen::Index intervals) {
  AxisymBartnikData d;
  d.f = Profile::constant(radius);
  d.h = Profile::analytic([radius](double th) {
    const double s = std::sin(th), c = std::cos(th);
    return Jet{radius * s, radius * c, -radius * s};
  });
  d.H = H;
  d.grid = uniform_grid(0.0, std::numbers::pi, intervals);
  validate(d);
  return d;
}

AxisymBartnikData spheroid_axisym(double a, double c, const Profile& H,
                                  Eigen::Index intervals) {
  AxisymBartnikData d;
  d.f = Profile::analytic([a, c](double th) {
    const double s = std::sin(th), co = std::cos(th);
    const double q = a * a * co * co + c * c * s * s;
    const double dq = 2.0 * (c * c - a * a) * s * co;
    const double ddq = 2.0 * (c * c - a * a) * (co * co - s * s);
    const double f = std::sqrt(q);
    return Jet{f, 0.5 * dq / f, 0.5 * ddq / f - 0.25 * dq * dq / (q * f)};
  });
  d.h = Profile::analytic([a](double th) {
    return Jet{a * std::sin(th), a * std::cos(th), -a * std::sin(th)};
  });
  d.H = H;
  d.grid = uniform_grid(0.0, std::numbers::pi, intervals);
  validate(d);
  return d;
}

AxisymBartnikData sampled_axisym(const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& f,
                                 const Eigen::VectorXd& h,
                                 const Eigen::VectorXd& H) {
  AxisymBartnikData d;
  d.f = Profile::sampled(SampledFn(theta, f));
  d.h = Profile::sampled(SampledFn(theta, h));
  d.H = Profile::sampled(SampledFn(theta, H));
  d.grid = theta;
  validate(d, 1e-6);
  return d;
}

int dimension_of(const BartnikData& d) {
  if (const auto* r = std::get_if<RoundBartnikData>(&d)) return r->n.value();
  return 3;
}

}  // namespace nnsc
