#include "nnsc/embedding.hpp"

#include <cmath>
#include <string>

#include "nnsc/error.hpp"

namespace nnsc {

namespace {

// Value at x0 of the cubic through four (x, y) pairs.
double lagrange4(const double* x, const double* y, double x0) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double w = 1.0;
    for (int j = 0; j < 4; ++j) {
      if (j != i) w *= (x0 - x[j]) / (x[i] - x[j]);
    }
    sum += w * y[i];
  }
  return sum;
}

void fill_poles(const Eigen::VectorXd& grid, Eigen::VectorXd& v) {
  const Eigen::Index last = grid.size() - 1;
  if (last < 5) {
    fail(ErrorKind::kResolution, "axisymmetric grid too coarse at the poles");
  }
  v(0) = lagrange4(grid.data() + 1, v.data() + 1, grid(0));
  v(last) = lagrange4(grid.data() + last - 4, v.data() + last - 4, grid(last));
}

double gauss_at(const AxisymBartnikData& d, double th) {
  const Jet f = d.f.jet(th), h = d.h.jet(th);
  const double d_slope = (h.d2 * f.value - h.d1 * f.d1) / (f.value * f.value);
  return -d_slope / (f.value * h.value);
}

}  // namespace

SampledFn gauss_curvature(const AxisymBartnikData& d) {
  validate(d);
  Eigen::VectorXd K(d.grid.size());
  for (Eigen::Index i = 1; i + 1 < d.grid.size(); ++i) {
    K(i) = gauss_at(d, d.grid(i));
  }
  fill_poles(d.grid, K);
  return SampledFn(d.grid, K);
}

SampledFn embed_axisym(const AxisymBartnikData& d) {
  validate(d);
  const Eigen::Index size = d.grid.size();
  Eigen::VectorXd H0(size);
  for (Eigen::Index i = 1; i + 1 < size; ++i) {
    const double th = d.grid(i);
    const Jet f = d.f.jet(th), h = d.h.jet(th);
    const double slope = h.d1 / f.value;
    const double disc = 1.0 - slope * slope;
    if (disc < -1e-12) {
      fail(ErrorKind::kPrecondition,
           "f^2 - h'^2 < 0 at theta = " + std::to_string(th) +
               ": not embeddable as a surface of revolution");
    }
    const double K = gauss_at(d, th);
    if (!(K > 0.0)) {
      fail(ErrorKind::kPrecondition,
           "Gauss curvature not positive at theta = " + std::to_string(th) +
               ": Brown-York mass undefined");
    }
    const double zs = std::sqrt(std::max(disc, 0.0));
    if (zs == 0.0) {
      fail(ErrorKind::kPrecondition,
           "degenerate meridian (z' = 0) at theta = " + std::to_string(th));
    }
    H0(i) = K * h.value / zs + zs / h.value;
  }
  fill_poles(d.grid, H0);
  return SampledFn(d.grid, H0);
}

}  // namespace nnsc
