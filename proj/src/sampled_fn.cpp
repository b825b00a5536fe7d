#include "nnsc/sampled_fn.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nnsc/error.hpp"

namespace nnsc {

namespace {

Eigen::VectorXd not_a_knot_second_derivatives(const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& y) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd m = Eigen::VectorXd::Zero(n);
  if (n < 3) return m;
  if (n == 3) {
    // Single parabola through three points.
    const double d0 = (y(1) - y(0)) / (x(1) - x(0));
    const double d1 = (y(2) - y(1)) / (x(2) - x(1));
    m.setConstant(2.0 * (d1 - d0) / (x(2) - x(0)));
    return m;
  }
  Eigen::VectorXd h = x.tail(n - 1) - x.head(n - 1);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(3 * static_cast<std::size_t>(n) + 2);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

  // Third derivative continuous across x(1) and x(n-2).
  triplets.emplace_back(0, 0, h(1));
  triplets.emplace_back(0, 1, -(h(0) + h(1)));
  triplets.emplace_back(0, 2, h(0));
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    triplets.emplace_back(i, i - 1, h(i - 1));
    triplets.emplace_back(i, i, 2.0 * (h(i - 1) + h(i)));
    triplets.emplace_back(i, i + 1, h(i));
    rhs(i) = 6.0 * ((y(i + 1) - y(i)) / h(i) - (y(i) - y(i - 1)) / h(i - 1));
  }
  triplets.emplace_back(n - 1, n - 3, h(n - 2));
  triplets.emplace_back(n - 1, n - 2, -(h(n - 3) + h(n - 2)));
  triplets.emplace_back(n - 1, n - 1, h(n - 3));

  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) {
    fail(ErrorKind::kResolution, "spline system is singular");
  }
  m = lu.solve(rhs);
  return m;
}

}  // namespace

SampledFn::SampledFn(Eigen::VectorXd grid, Eigen::VectorXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() != values_.size()) {
    fail(ErrorKind::kDomain, "grid and values differ in length");
  }
  if (grid_.size() < 2) {
    fail(ErrorKind::kResolution, "at least two samples are required");
  }
  for (Eigen::Index i = 0; i < grid_.size(); ++i) {
    if (!std::isfinite(grid_(i)) || !std::isfinite(values_(i))) {
      fail(ErrorKind::kDomain,
           "non-finite sample at index " + std::to_string(i));
    }
    if (i > 0 && !(grid_(i) > grid_(i - 1))) {
      fail(ErrorKind::kDomain,
           "grid not strictly increasing at index " + std::to_string(i));
    }
  }
  second_ = not_a_knot_second_derivatives(grid_, values_);
}

Eigen::Index SampledFn::interval(double x) const {
  const Eigen::Index n = grid_.size();
  const double* begin = grid_.data();
  const double* it = std::upper_bound(begin, begin + n, x);
  Eigen::Index i = static_cast<Eigen::Index>(it - begin) - 1;
  return std::clamp<Eigen::Index>(i, 0, n - 2);
}

Jet SampledFn::jet(double x) const {
  const Eigen::Index i = interval(x);
  const double x0 = grid_(i), x1 = grid_(i + 1);
  const double h = x1 - x0;
  const double a = (x1 - x) / h;
  const double b = (x - x0) / h;
  const double m0 = second_(i), m1 = second_(i + 1);
  const double y0 = values_(i), y1 = values_(i + 1);
  Jet j;
  j.value = a * y0 + b * y1 +
            ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
  j.d1 = (y1 - y0) / h - (3.0 * a * a - 1.0) * h * m0 / 6.0 +
         (3.0 * b * b - 1.0) * h * m1 / 6.0;
  j.d2 = a * m0 + b * m1;
  return j;
}

Eigen::VectorXd SampledFn::derivative_at_nodes() const {
  Eigen::VectorXd d(grid_.size());
  for (Eigen::Index i = 0; i < grid_.size(); ++i) d(i) = jet(grid_(i)).d1;
  return d;
}

Eigen::VectorXd uniform_grid(double a, double b, Eigen::Index intervals) {
  if (intervals < 1 || !(b > a)) {
    fail(ErrorKind::kDomain, "uniform grid needs b > a and intervals >= 1");
  }
  Eigen::VectorXd g = Eigen::VectorXd::LinSpaced(intervals + 1, a, b);
  g(0) = a;
  g(intervals) = b;
  return g;
}

}  // namespace nnsc
