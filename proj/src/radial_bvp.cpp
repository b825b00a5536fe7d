#include "nnsc/radial_bvp.hpp"

#include <cmath>

#include "nnsc/error.hpp"

namespace nnsc {

namespace {

// Weights of the second-order derivative at x0 from nodes x0, x1, x2 (any
// order).
Eigen::Vector3d one_sided_weights(double x0, double x1, double x2) {
  const double h1 = x1 - x0, h2 = x2 - x1;
  return {-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2),
          -h1 / (h2 * (h1 + h2))};
}

}  // namespace

Eigen::VectorXd refine_grid(const Eigen::VectorXd& grid, int factor) {
  if (factor < 1) fail(ErrorKind::kDomain, "refinement factor must be >= 1");
  const Eigen::Index intervals = grid.size() - 1;
  Eigen::VectorXd out(intervals * factor + 1);
  for (Eigen::Index i = 0; i < intervals; ++i) {
    for (int k = 0; k < factor; ++k) {
      out(i * factor + k) =
          grid(i) + (grid(i + 1) - grid(i)) * static_cast<double>(k) / factor;
    }
  }
  out(out.size() - 1) = grid(grid.size() - 1);
  return out;
}

RadialSolution solve_radial(const BandMetric& g, const Eigen::VectorXd& grid,
                            const std::function<double(double)>& q,
                            const std::function<double(double)>& f,
                            FarBoundary far) {
  const Eigen::Index N = grid.size();
  if (N < 4) fail(ErrorKind::kResolution, "radial solve needs at least 4 nodes");
  const int k = g.n.slice();
  auto flux_weight = [&](double t) {
    return std::pow(g.radius(t), k) / g.lapse(t);
  };

  // Unknown v = w - 1, so Laplace(v) - q v = f + q with v(a) = 0. The rows
  // form a tridiagonal system; with q >= 0 it is an M-matrix and the sweep
  // below keeps the sign of v exactly.
  Eigen::VectorXd lo = Eigen::VectorXd::Zero(N), di = Eigen::VectorXd::Ones(N),
                  up = Eigen::VectorXd::Zero(N), rhs = Eigen::VectorXd::Zero(N);
  for (Eigen::Index i = 1; i + 1 < N; ++i) {
    const double t = grid(i), q_t = q(t);
    const double hm = t - grid(i - 1), hp = grid(i + 1) - t;
    const double pm = flux_weight(0.5 * (t + grid(i - 1))) / hm;
    const double pp = flux_weight(0.5 * (t + grid(i + 1))) / hp;
    const double volume = 0.5 * (hm + hp) * g.lapse(t) * std::pow(g.radius(t), k);
    lo(i) = pm;
    di(i) = -pm - pp - q_t * volume;
    up(i) = pp;
    rhs(i) = (f(t) + q_t) * volume;
  }
  const Eigen::Index last = N - 1;
  if (far == FarBoundary::kDecay) {
    // v'(b) + kappa v(b) = 0, its third coefficient eliminated with row
    // last - 1.
    const Eigen::Vector3d w =
        one_sided_weights(grid(last), grid(last - 1), grid(last - 2));
    const Jet r = g.radius.jet(grid(last));
    const double kappa = (k - 1.0) * r.d1 / r.value;
    const double scale = w(2) / lo(last - 1);
    lo(last) = w(1) - scale * di(last - 1);
    di(last) = w(0) + kappa - scale * up(last - 1);
    rhs(last) = -scale * rhs(last - 1);
  }

  for (Eigen::Index i = 1; i < N; ++i) {
    const double m = lo(i) / di(i - 1);
    di(i) -= m * up(i - 1);
    rhs(i) -= m * rhs(i - 1);
  }
  Eigen::VectorXd v(N);
  v(last) = rhs(last) / di(last);
  for (Eigen::Index i = last - 1; i >= 0; --i) {
    v(i) = (rhs(i) - up(i) * v(i + 1)) / di(i);
  }
  if (!v.allFinite()) {
    fail(ErrorKind::kSolver, "radial boundary value solve failed");
  }
  const Eigen::VectorXd w = v.array() + 1.0;

  RadialSolution out;
  out.w = SampledFn(grid, w);
  out.slope_lower = one_sided_weights(grid(0), grid(1), grid(2))
                        .dot(Eigen::Vector3d(v(0), v(1), v(2)));
  out.slope_upper =
      one_sided_weights(grid(last), grid(last - 1), grid(last - 2))
           .dot(Eigen::Vector3d(v(last), v(last - 1), v(last - 2)));
  return out;
}

}  // namespace nnsc
