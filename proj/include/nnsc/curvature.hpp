#ifndef NNSC_CURVATURE_HPP_
#define NNSC_CURVATURE_HPP_

#include <Eigen/Dense>

#include "nnsc/band_metric.hpp"
#include "nnsc/sampled_fn.hpp"

namespace nnsc {

// Extrinsic and intrinsic geometry of the slice {t} x S^{n-1}, normal d/dt.
struct SliceGeometry {
  double H = 0.0;            // mean curvature (n-1) r'/(u r)
  double A_principal = 0.0;  // the single principal curvature r'/(u r)
  double R_bar = 0.0;        // scalar curvature of the slice (n-1)(n-2)/r^2
};

SliceGeometry slice_geometry(const BandMetric& g, double t);

// Scalar curvature at one slice from the warped-product formula
//   R = (n-1)(n-2)(1 - (r'/u)^2)/r^2 - 2(n-1)/(u r) d/dt(r'/u).
double scalar_curvature_at(const BandMetric& g, double t);

// Scalar curvature at one slice through the Gauss equation
//   R = R_bar - 2 dH/ds - H^2 - |A|^2,  ds = u dt.
double gauss_scalar_curvature_at(const BandMetric& g, double t);

// Closed-formula scalar curvature on the band grid, with derivatives taken
// from the profiles (spline derivatives for sampled bands).
SampledFn scalar_curvature_band(const BandMetric& g);

struct FdOptions {
  double step = 1e-3;
  // Largest tolerated |R(h) - R(h/2)| relative to 1 + |R|.
  double richardson_tolerance = 1e-3;
};

// Independent oracle: second-order finite differences of the metric
// components u, r (values only) at steps h and h/2, combined by one level of
// Richardson extrapolation. One-sided stencils are used near the band ends.
SampledFn scalar_curvature_fd(const BandMetric& g, const FdOptions& opts = {});
double scalar_curvature_fd_at(const BandMetric& g, double t,
                              const FdOptions& opts = {});

struct CurvatureReport {
  Eigen::VectorXd t;
  Eigen::VectorXd H;
  Eigen::VectorXd A_principal;
  Eigen::VectorXd R_bar;
  Eigen::VectorXd R;
  Eigen::VectorXd gauss_residual;

  double max_gauss_residual() const;
};

CurvatureReport curvature_report(const BandMetric& g);

}  // namespace nnsc

#endif  // NNSC_CURVATURE_HPP_
