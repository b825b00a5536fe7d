#ifndef NNSC_QUASI_SPHERICAL_HPP_
#define NNSC_QUASI_SPHERICAL_HPP_

#include <optional>
#include <variant>

#include "nnsc/band_metric.hpp"
#include "nnsc/ode.hpp"
#include "nnsc/profile.hpp"

namespace nnsc {

// Foliated backgrounds dt^2 + rbar(t)^2 gamma_std on which the lapse u of the
// quasi-spherical metric u^2 dt^2 + rbar^2 gamma_std is solved for. Under
// rotational symmetry the equation
//   Hbar u' = (u - u^3) Rbar_slice / 2 - u R_background / 2 + u^3 T / 2
// is an ODE in t, with T the prescribed scalar curvature.
namespace background {

// rbar = r, T = 0: flat space foliated by coordinate spheres.
struct Euclidean {};

// rbar = sinh(kappa t)/kappa, T = -n(n-1) kappa^2.
struct Hyperbolic {
  double kappa = 1.0;
};

// rbar(t)^2 = e^{2 a2 t} ((1-t) c + t) with c = gamma_radius^2: the round
// path from gamma_2 = c gamma_std to gamma_std, expanded by e^{2 a2 t}.
// T = K, by default the minimum over the path of the slice scalar curvature.
struct RoundPath {
  double a2 = 1.0;
  double gamma_radius = 1.0;
  std::optional<double> K;
};

// rbar(t)^2 = (1 + t^2) c(t), where c(t) moves from gamma_radius^2 to 1 along
// a smooth step and stays 1 on [5/6, 1]. T = delta0.
struct PscPath {
  double delta0 = 0.0;
  double gamma_radius = 1.0;
};

// Arbitrary analytic slice radius and constant target scalar curvature.
struct ExplicitPath {
  Profile slice_radius;
  double target = 0.0;
};

}  // namespace background

using Background =
    std::variant<background::Euclidean, background::Hyperbolic,
                 background::RoundPath, background::PscPath,
                 background::ExplicitPath>;

struct QsProblem {
  Background background = background::Euclidean{};
  Dimension n{3};
  double start = 1.0;  // first slice (r0, rho2, or 0 for paths)
  double end = 10.0;   // last slice
  double u0 = 1.0;     // initial lapse, constant under symmetry
  StepControl step;
};

// Bounds outside which a lapse counts as blown up.
inline constexpr double kLapseFloor = 1e-8;
inline constexpr double kLapseCeiling = 1e8;

// Euclidean background. The fixed point u = 1 is kept exactly by integrating
// s = ln|u - 1| with RK4; the returned band carries that deviation.
BandMetric qs_euclidean_solve(const QsProblem& p);

// Hyperbolic background of curvature -kappa^2; same deviation form. The
// result is tagged with the closed-form constant c0 of the kappa = 1 problem.
BandMetric qs_hyperbolic_solve(const QsProblem& p);

// c0 = u0^2/(1 - u0^2) / (sinh^{n-2}(rho2) cosh^2(rho2)).
double hyperbolic_c0(Dimension n, double rho2, double u0);

// Inverse of hyperbolic_c0 for 0 < u0 < 1.
double hyperbolic_u0_for_c0(Dimension n, double rho2, double c0);

// u(rho) with u^2 = 1 - 1/(1 + c0 sinh^{n-2}(rho) cosh^2(rho)).
double qs_closed_form_hyperbolic(Dimension n, double rho2, double u0,
                                 double rho);

struct PathSolution {
  BandMetric band;
  double K = 0.0;          // target scalar curvature used
  double H_bar_start = 0.0;
  double H_bar_end = 0.0;
  double u_end = 0.0;
  double H2_prime = 0.0;   // u(end)^{-1} Hbar(end)
  double u_sup = 0.0;
};

// Round reductions of the path equations (RoundPath, PscPath, ExplicitPath).
// Hbar must stay positive and rbar strictly increasing for RoundPath.
PathSolution qs_path_solve(const QsProblem& p);

// u(0) = Hbar(0)/H2 for a path problem.
double path_initial_lapse(const QsProblem& p, double H2);

struct ExpansionConstants {
  double limit_u = 0.0;  // lim (u - 1) e^{n rho}
  double limit_U = 0.0;  // lim (U - rho) e^{n rho}, U' = u, U - rho -> 0
  double residual_u = 0.0;
  double residual_U = 0.0;
  double consistency = 0.0;  // |limit_U + limit_u/n|
};

// Extrapolates the two limits from (u - 1)e^{n rho} and (U - rho)e^{n rho}
// sampled at rho = 0.6, 0.8, 1.0 times the band end (12, 16, 20 by default)
// with a least-squares fit a + b e^{-rho}.
ExpansionConstants extract_expansion_constants(const BandMetric& g);

// C(n) in lim (u - 1) e^{n rho} = -C(n)/c0, from the large-rho expansion
// of the closed form: C(n) = 2^{n-1}.
double expansion_constant(Dimension n);

// (U - rho) e^{n rho} at rho, where U' = u and U - rho -> 0 at infinity. The
// tail beyond the band end is closed with the decay rate measured there.
double scaled_U_offset(const BandMetric& g, double rho);

struct MeasuredConstant {
  double first = 0.0;   // -c0 limit_u at the first c0
  double second = 0.0;  // same at the second c0
  double relative_spread = 0.0;
};

// Measures C(n) by extraction at two values of c0 (rho2 = asinh 1).
MeasuredConstant measure_expansion_constant(Dimension n, double c0_first,
                                            double c0_second,
                                            double rho_max = 20.0);

}  // namespace nnsc

#endif  // NNSC_QUASI_SPHERICAL_HPP_
