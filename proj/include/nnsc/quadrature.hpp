#ifndef NNSC_QUADRATURE_HPP_
#define NNSC_QUADRATURE_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <numbers>

namespace nnsc {

// Composite Simpson rule over samples on a uniform grid; the number of
// intervals must be even. Exact for cubics.
double simpson(const Eigen::VectorXd& grid, const Eigen::VectorXd& values);

// Composite Gauss-Legendre (10 nodes per panel) of f over [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a,
                      double b, int panels = 1);

// Volume of the unit round sphere S^{k}.
inline double unit_sphere_volume(int k) {
  const double half = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

}  // namespace nnsc

#endif  // NNSC_QUADRATURE_HPP_
