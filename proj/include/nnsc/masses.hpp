#ifndef NNSC_MASSES_HPP_
#define NNSC_MASSES_HPP_

#include <array>
#include <optional>

#include "nnsc/band_metric.hpp"
#include "nnsc/bartnik_data.hpp"
#include "nnsc/sampled_fn.hpp"

namespace nnsc {

// Surface quantities of Bartnik data. Round data may live in any dimension;
// axisymmetric data are 2-spheres.
double area(const BartnikData& d);
double total_mean_curvature(const BartnikData& d);

// sqrt(|S|/16 pi) (1 - (1/16 pi) int H^2). Throws a dimension error unless
// n = 3.
double hawking_mass(const BartnikData& d);

// (1/8 pi) int (H0 - H) with H0 the mean curvature of the isometric embedding
// into R^3. Throws a dimension error unless n = 3, and a precondition error
// when the Gauss curvature is not positive.
double brown_york_mass(const BartnikData& d);

struct MassReport {
  std::optional<double> hawking;
  std::optional<double> brown_york;
  double total_mean_curvature = 0.0;
  std::optional<double> adm;
  std::optional<double> mass_aspect_trace;
  double area = 0.0;
};

// Evaluates what is defined for the data; Brown-York is left empty when the
// Gauss curvature is not positive.
MassReport mass_report(const BartnikData& d);

struct AdmFit {
  double mass = 0.0;
  double residual = 0.0;
  std::array<double, 3> radii{};
  // (u~^2 - 1) r^{n-2} / 2 at the three radii, u~ = u / r'.
  std::array<double, 3> flux{};
};

// Fits the tail of the band to the Schwarzschild family
// u~ = (1 - 2 m r^{2-n})^{-1/2}, u~ the lapse in the area-radius coordinate.
// Exact for Schwarzschild-tagged bands. Throws an extraction error when the
// tail does not settle onto the family (not asymptotically flat).
AdmFit adm_mass_fit(const BandMetric& g);
double adm_mass_from_tail(const BandMetric& g);

// Brown-York mass r (1 - r'/u) of every slice of a 3-dimensional band, and
// its large-r limit by a fit in powers of 1/r over the outer slices.
SampledFn leaf_brown_york(const BandMetric& g);

struct LeafLimit {
  double limit = 0.0;
  double residual = 0.0;
};
LeafLimit leaf_brown_york_limit(const BandMetric& g);

struct MassAspect {
  // n lim (sinh^2 r sinh^2 rho(r) - 1)/r^n per component, times n - 1.
  double trace = 0.0;
  double mass_integral = 0.0;  // omega_{n-1} * trace
  // -(n-1) n lim (U - rho) e^{n rho}, i.e. -(n-1) C(n)/c0.
  double expansion_trace = 0.0;
  double fit_residual = 0.0;
};

// Mass aspect of the conformal compactification of a hyperbolic
// quasi-spherical band. Throws an extraction error when the band is not a
// hyperbolic quasi-spherical solution or the limit does not settle.
MassAspect hyperbolic_mass_aspect(const BandMetric& g);

}  // namespace nnsc

#endif  // NNSC_MASSES_HPP_
