#ifndef NNSC_RADIAL_BVP_HPP_
#define NNSC_RADIAL_BVP_HPP_

#include <Eigen/Dense>
#include <functional>

#include "nnsc/band_metric.hpp"
#include "nnsc/sampled_fn.hpp"

namespace nnsc {

enum class FarBoundary {
  kDirichlet,  // w(b) = 1
  kDecay,      // w - 1 ~ r^{2-n}: w' = -(n-2)(w - 1) r'/r at b
};

struct RadialSolution {
  SampledFn w;
  double slope_lower = 0.0;  // dw/dt at a
  double slope_upper = 0.0;  // dw/dt at b
};

// Solves Laplace(w) - q w = f for radial w on the band, where
// Laplace(w) = (u r^{n-1})^{-1} (r^{n-1} w'/u)', with w(a) = 1 and the far
// condition at b. Conservative second-order differences on `grid` (any
// strictly increasing grid spanning [a, b]); end slopes from one-sided
// three-point stencils.
RadialSolution solve_radial(const BandMetric& g, const Eigen::VectorXd& grid,
                            const std::function<double(double)>& q,
                            const std::function<double(double)>& f,
                            FarBoundary far = FarBoundary::kDirichlet);

// grid with every interval split into `factor` equal pieces.
Eigen::VectorXd refine_grid(const Eigen::VectorXd& grid, int factor);

}  // namespace nnsc

#endif  // NNSC_RADIAL_BVP_HPP_
