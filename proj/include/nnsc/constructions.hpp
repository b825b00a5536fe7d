#ifndef NNSC_CONSTRUCTIONS_HPP_
#define NNSC_CONSTRUCTIONS_HPP_

#include <functional>
#include <optional>
#include <string>

#include "nnsc/band_metric.hpp"
#include "nnsc/profile.hpp"
#include "nnsc/sampled_fn.hpp"

namespace nnsc {

// Area radius of a round sphere of volume V: (V / omega_{n-1})^{1/(n-1)}.
double radius_from_volume(Dimension n, double volume);
// Mass parameter of the Schwarzschild sphere of radius r and mean curvature
// H: (r^{n-2}/2)(1 - (H r/(n-1))^2).
double schwarzschild_mass(Dimension n, double radius, double H);

struct CobordismBand {
  std::optional<BandMetric> band;
  std::string violated;  // failed hypothesis when infeasible
  double r1 = 0.0, r2 = 0.0;
  double m1 = 0.0, m2 = 0.0;
  double min_R = 0.0;

  bool feasible() const { return band.has_value(); }
};

// Band of (1 - 2m(r)/r^{n-2})^{-1} dr^2 + r^2 gamma_std joining the round
// data (V1, H1) to (V2, H2), with m(r) the monotone cubic from m1 to m2 with
// flat ends. Infeasible when V1 >= V2 or m1 > m2. Throws a construction error
// if the band crosses a horizon or misses the boundary data.
CobordismBand schwarzschild_band(Dimension n, double V1, double H1, double V2,
                                 double H2, Eigen::Index intervals = 1000);

struct CollarSpec {
  // lambda(tau) on [-depth, 0] with lambda(0) = 0, lambda'(0) = -1. When
  // empty, -tau + (c/2) tau^2 with c chosen by bisection.
  std::optional<Profile> shape;
  double depth = 0.01;        // collar width t0 in distance
  double bend_depth = 0.005;  // t1 < t0; lambda is cut off on [-t0, -t1]
};

struct CollarResult {
  BandMetric band;
  double amplitude = 0.0;         // m = (H1 - target)/(n-1)
  double shape_curvature = 0.0;   // c of the default shape, 0 otherwise
  double boundary_H = 0.0;
  double min_R_bend = 0.0;        // over tau in [-t1, 0]
  double min_R_collar = 0.0;      // over tau in [-t0, 0]
};

// Lowers the mean curvature of the top slice of g1 to target_H by scaling
// the slices of a collar by 1 + m lambda(tau), tau = -(distance to the top).
CollarResult collar_bend(const BandMetric& g1, double target_H,
                         const CollarSpec& spec = {});

// Two bands meeting along the top slice of `lower` and the bottom slice of
// `upper`. Mean curvatures are taken with respect to increasing t on both
// sides.
struct CorneredMetric {
  BandMetric lower;
  BandMetric upper;
  double radius = 0.0;
  double H_minus = 0.0;
  double H_plus = 0.0;

  double jump() const { return H_minus - H_plus; }
  bool admissible() const { return H_minus >= H_plus; }
};

// Throws a precondition error if the interface radii differ by more than
// 1e-12.
CorneredMetric glue_with_corner(const BandMetric& lower, const BandMetric& upper);

// Kernel equal to 1 on [-1/3, 1/3], 0 outside [-2/3, 2/3], unit integral.
double mollifier_kernel(double x);

struct MollifyResult {
  BandMetric band;  // parametrized by signed distance from the corner
  double delta = 0.0;
  double epsilon = 0.0;  // kernel scale delta^2/100
  double sup_R_collar = 0.0;
  double sup_R_outside = 0.0;
  double negative_part = 0.0;  // int over the collar of |R_-|^{n/2}
  double collar_curvature = 0.0;     // int over the collar of R
  double collar_background = 0.0;    // same for the unsmoothed bands
  double jump_mass = 0.0;            // 2 (H- - H+) area
  double excess_curvature() const { return collar_curvature - collar_background; }
};

// Smooths the corner over |s| <= delta/2. Throws a precondition error for
// inadmissible corners or a collar wider than either band.
MollifyResult mollify_corner(const CorneredMetric& c, double delta);

enum class ConformalMode { kCompactBVP, kDecayAtInfinity };

struct ConformalOptions {
  double smallness_bound = 1e-2;  // bound on (int |h_-|^{n/2})^{2/n}
  int refine = 1;                 // subdivisions of each band grid interval
};

struct ConformalResult {
  SampledFn factor;  // the conformal factor w
  BandMetric deformed;  // w^{4/(n-2)} g
  double smallness = 0.0;
  double H_lower = 0.0, H_upper = 0.0;
  double H_tilde_lower = 0.0, H_tilde_upper = 0.0;
  double outward_slope_lower = 0.0, outward_slope_upper = 0.0;
};

// Solves Laplace(w) - h w = 0 with w = 1 on the boundary (or w -> 1 at the
// far end). Throws a precondition error when the smallness bound fails.
ConformalResult conformal_solve(const BandMetric& g, const Profile& h,
                                ConformalMode mode,
                                const ConformalOptions& opts = {});

struct BumpRegion {
  double lo = 0.0;
  double hi = 0.0;
};

struct PerturbOptions {
  int refine = 1;
  // Smallest acceptable (c/2) dw/dnu at the top boundary.
  std::optional<double> min_margin;
  // Scalar curvature of g; computed from the profiles when empty.
  std::function<double(double)> curvature;
};

struct PerturbResult {
  BandMetric band;
  SampledFn factor;
  double min_R = 0.0;
  double margin_lower = 0.0;
  double margin_upper = 0.0;
};

// Solves Laplace(w) - (1/c) eta R w = -epsilon, w = 1 on the boundary, with
// eta a cutoff on `bump` where R > 0, and returns w^{4/(n-2)} g whose scalar
// curvature is w^{-(n+2)/(n-2)} ((1 - eta) R w + c epsilon).
PerturbResult scalar_perturb(const BandMetric& g, BumpRegion bump,
                             double epsilon, const PerturbOptions& opts = {});

struct LowerBoundResult {
  ConformalResult conformal;
  double min_R = 0.0;
  double bound = 0.0;  // -c(n) C
};

// Conformal solve with h = -(R + C)_-/c(n); the result has R >= -c(n) C.
LowerBoundResult conformal_lower_bound(const BandMetric& g, double C,
                                       const ConformalOptions& opts = {});

struct PipelineResult {
  MollifyResult mollified;
  ConformalResult conformal;
  PerturbResult perturbed;
};

// mollify_corner, then conformal_solve with h = -R_-/c(n), then
// scalar_perturb over the whole band.
PipelineResult nnsc_smooth_pipeline(const CorneredMetric& c, double delta,
                                     double epsilon,
                                     const ConformalOptions& opts = {});

}  // namespace nnsc

#endif  // NNSC_CONSTRUCTIONS_HPP_
