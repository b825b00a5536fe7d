#ifndef NNSC_SAMPLED_FN_HPP_
#define NNSC_SAMPLED_FN_HPP_

#include <Eigen/Dense>

namespace nnsc {

// Value and first two derivatives of a scalar function at a point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Samples of a real function on a strictly increasing grid, interpolated by a
// cubic spline with not-a-knot end conditions. Every derivative query is
// answered by that spline; outside the grid the end cubic is continued.
//
// Two samples give the linear interpolant, three the interpolating parabola.
class SampledFn {
 public:
  SampledFn() = default;
  SampledFn(Eigen::VectorXd grid, Eigen::VectorXd values);

  const Eigen::VectorXd& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return grid_.size(); }
  double front() const { return grid_(0); }
  double back() const { return grid_(grid_.size() - 1); }

  double operator()(double x) const { return jet(x).value; }
  Jet jet(double x) const;

  // Samples of the spline derivative at the grid nodes.
  Eigen::VectorXd derivative_at_nodes() const;

 private:
  Eigen::Index interval(double x) const;

  Eigen::VectorXd grid_;
  Eigen::VectorXd values_;
  Eigen::VectorXd second_;  // spline second derivatives at the nodes
};

// Uniform grid with `intervals` + 1 points on [a, b].
Eigen::VectorXd uniform_grid(double a, double b, Eigen::Index intervals);

}  // namespace nnsc

#endif  // NNSC_SAMPLED_FN_HPP_
