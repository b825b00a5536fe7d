#ifndef NNSC_BARTNIK_DATA_HPP_
#define NNSC_BARTNIK_DATA_HPP_

#include <Eigen/Dense>
#include <variant>

#include "nnsc/band_metric.hpp"
#include "nnsc/profile.hpp"

namespace nnsc {

// Round sphere of area radius r (metric r^2 gamma_std) with constant mean
// curvature H with respect to the outward normal.
struct RoundBartnikData {
  Dimension n{3};
  double radius = 1.0;
  double H = 0.0;
};

RoundBartnikData make_round(Dimension n, double radius, double H);

// Axisymmetric metric f(theta)^2 dtheta^2 + h(theta)^2 dphi^2 on S^2 with
// mean-curvature profile H(theta). Quadratures run on `grid`, a uniform
// theta grid on [0, pi] with an even number of intervals.
struct AxisymBartnikData {
  Profile f;
  Profile h;
  Profile H;
  Eigen::VectorXd grid;
};

// Checks f > 0, h > 0 inside, and the pole closure h(0) = h(pi) = 0,
// h'(0) = f(0), h'(pi) = -f(pi); throws a precondition error otherwise.
void validate(const AxisymBartnikData& d, double tol = 1e-8);

// Round sphere of the given radius written as an axisymmetric profile.
AxisymBartnikData round_axisym(double radius, const Profile& H,
                               Eigen::Index intervals = 400);
// Spheroid of revolution with equatorial radius `a` and polar semi-axis `c`:
// h = a sin(theta), f = sqrt(a^2 cos^2 + c^2 sin^2).
AxisymBartnikData spheroid_axisym(double a, double c, const Profile& H,
                                  Eigen::Index intervals = 400);
// Profile data from tabulated samples on a uniform grid over [0, pi].
AxisymBartnikData sampled_axisym(const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& f,
                                 const Eigen::VectorXd& h,
                                 const Eigen::VectorXd& H);

using BartnikData = std::variant<RoundBartnikData, AxisymBartnikData>;

int dimension_of(const BartnikData& d);

}  // namespace nnsc

#endif  // NNSC_BARTNIK_DATA_HPP_
