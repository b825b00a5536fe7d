#ifndef NNSC_ODE_HPP_
#define NNSC_ODE_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nnsc/error.hpp"

namespace nnsc {

struct StepControl {
  double step = 1e-3;        // fixed RK4 step, or initial step when adaptive
  bool adaptive = false;     // Dormand-Prince 5(4) with error control
  double tolerance = 1e-10;  // per-step absolute+relative tolerance
};

struct ScalarTrajectory {
  std::vector<double> t;
  std::vector<double> y;
};

// Integrates y' = rhs(t, y) from t0 to t1 for a scalar state. After every
// accepted step `admissible(t, y)` is consulted; a false return aborts with a
// solver error naming the last good abscissa. The final step is shortened so
// the trajectory ends exactly at t1.
template <typename Rhs, typename Admissible>
ScalarTrajectory integrate_scalar(const Rhs& rhs, double y0, double t0,
                                  double t1, const StepControl& control,
                                  const Admissible& admissible) {
  if (!(t1 > t0) || !(control.step > 0.0)) {
    fail(ErrorKind::kSolver, "integration needs t1 > t0 and a positive step");
  }
  ScalarTrajectory out;
  const auto estimate =
      static_cast<std::size_t>((t1 - t0) / control.step) + 2;
  out.t.reserve(estimate);
  out.y.reserve(estimate);
  out.t.push_back(t0);
  out.y.push_back(y0);

  auto accept = [&](double t, double y) {
    if (!std::isfinite(y) || !admissible(t, y)) {
      fail(ErrorKind::kSolver,
           "solution left the admissible range after t = " +
               std::to_string(out.t.back()));
    }
    out.t.push_back(t);
    out.y.push_back(y);
  };

  double t = t0, y = y0;
  if (!control.adaptive) {
    const auto steps = static_cast<long>(std::ceil((t1 - t0) / control.step - 1e-9));
    const double h = (t1 - t0) / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) {
      const double k1 = rhs(t, y);
      const double k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
      const double k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
      const double k4 = rhs(t + h, y + h * k3);
      y += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
      t = (i + 1 == steps) ? t1 : t0 + static_cast<double>(i + 1) * h;
      accept(t, y);
    }
    return out;
  }

  // Dormand-Prince 5(4) tableau.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  double h = std::min(control.step, t1 - t0);
  int rejections = 0;
  while (t < t1) {
    h = std::min(h, t1 - t);
    const double k1 = rhs(t, y);
    const double k2 = rhs(t + c2 * h, y + h * a21 * k1);
    const double k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const double k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 +
                                               a53 * k3 + a54 * k4));
    const double k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 +
                                          a64 * k4 + a65 * k5));
    const double y5 =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = rhs(t + h, y5);
    const double err = std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 +
                                     e6 * k6 + e7 * k7));
    const double scale =
        control.tolerance * (1.0 + std::max(std::abs(y), std::abs(y5)));
    if (!std::isfinite(err)) {
      h *= 0.25;
    } else if (err <= scale) {
      t = (t + h >= t1) ? t1 : t + h;
      y = y5;
      accept(t, y);
      rejections = 0;
      const double grow =
          err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(scale / err, 0.2), 0.2, 5.0);
      h *= grow;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(scale / err, 0.25));
      ++rejections;
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t)) || rejections > 60) {
      fail(ErrorKind::kSolver,
           "adaptive step collapsed after t = " + std::to_string(t));
    }
  }
  return out;
}

}  // namespace nnsc

#endif  // NNSC_ODE_HPP_
