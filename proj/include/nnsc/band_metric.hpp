#ifndef NNSC_BAND_METRIC_HPP_
#define NNSC_BAND_METRIC_HPP_

#include <Eigen/Dense>
#include <optional>
#include <variant>

#include "nnsc/profile.hpp"
#include "nnsc/sampled_fn.hpp"

namespace nnsc {

// Ambient dimension n of the manifold; slices are round S^{n-1}.
class Dimension {
 public:
  static constexpr int kMin = 3;
  static constexpr int kMax = 7;

  explicit Dimension(int n);
  int value() const { return n_; }
  // n - 1, the dimension of the slices.
  int slice() const { return n_ - 1; }
  friend bool operator==(Dimension, Dimension) = default;

 private:
  int n_;
};

// c(n) = 4(n-1)/(n-2), the conformal Laplacian constant.
double conformal_constant(Dimension n);

namespace tag {
struct Euclidean {};
struct Hyperbolic {
  double kappa = 1.0;
};
// Exact vacuum Schwarzschild with constant mass; t is the area radius.
struct Schwarzschild {
  double m = 0.0;
};
// Lapse of the closed-form hyperbolic quasi-spherical solution.
struct HyperbolicQS {
  double c0 = 0.0;
  double u0 = 1.0;
  double rho2 = 0.0;
};
// Schwarzschild-type band with a monotone mass function m(r).
struct SchwarzschildBand {
  double m1 = 0.0;
  double m2 = 0.0;
};
}  // namespace tag

using AnalyticTag = std::variant<std::monostate, tag::Euclidean,
                                 tag::Hyperbolic, tag::Schwarzschild,
                                 tag::HyperbolicQS, tag::SchwarzschildBand>;

// ln|u - 1| along the grid together with the sign of u - 1, carried by
// quasi-spherical solutions whose lapse tends to the fixed point u = 1.
// u - 1 itself underflows relative to 1 long before the asymptotic regime.
struct LapseDeviation {
  SampledFn log_abs;
  int sign = 0;  // sign(u - 1); 0 means u == 1 identically
};

// Rotationally symmetric metric u(t)^2 dt^2 + r(t)^2 gamma_std on
// S^{n-1} x [a, b]. Slices are oriented by increasing t.
struct BandMetric {
  Dimension n{3};
  double a = 0.0;
  double b = 1.0;
  Profile lapse;
  Profile radius;
  Eigen::VectorXd grid;  // slices used for tabulation and sampled checks
  AnalyticTag tag;
  std::optional<LapseDeviation> deviation;

  bool contains(double t) const;
};

// Throws a domain error if the band is malformed or u, r are not positive on
// its grid.
void validate(const BandMetric& g);

BandMetric euclidean_band(Dimension n, double r_a, double r_b,
                          Eigen::Index intervals = 1000);
BandMetric hyperbolic_band(Dimension n, double kappa, double t_a, double t_b,
                           Eigen::Index intervals = 1000);
// Exact Schwarzschild in area-radius coordinate on [r_a, r_b].
BandMetric schwarzschild_metric_band(Dimension n, double m, double r_a,
                                     double r_b, Eigen::Index intervals = 1000);
// (1 - 2 m(r)/r^{n-2})^{-1} dr^2 + r^2 gamma_std for an analytic m(r).
BandMetric mass_function_band(Dimension n, const Profile& mass, double r_a,
                              double r_b, Eigen::Index intervals = 1000);
// Band from tabulated lapse and radius; both interpolated by splines.
BandMetric sampled_band(Dimension n, const Eigen::VectorXd& t,
                        const Eigen::VectorXd& u, const Eigen::VectorXd& r);

// Proper distance along a band measured from an anchor slice.
class ArclengthMap {
 public:
  ArclengthMap(const BandMetric& g, double anchor,
               Eigen::Index intervals = 4000);
  double s_of_t(double t) const;
  double t_of_s(double s) const;
  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }

 private:
  Profile lapse_;
  SampledFn s_;  // s(t) on a fine grid
  SampledFn t_;  // inverse, refined by Newton steps
  double s_min_ = 0.0;
  double s_max_ = 0.0;
};

}  // namespace nnsc

#endif  // NNSC_BAND_METRIC_HPP_
