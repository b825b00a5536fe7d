#include "nnsc/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nnsc/curvature.hpp"
#include "nnsc/error.hpp"
#include "nnsc/jet_math.hpp"
#include "nnsc/quadrature.hpp"
#include "nnsc/radial_bvp.hpp"

namespace nnsc {

namespace {

constexpr double kInterfaceTolerance = 1e-12;
constexpr double kBoundaryTolerance = 1e-8;

Eigen::VectorXd merge_grids(std::vector<double> nodes) {
  std::sort(nodes.begin(), nodes.end());
  std::vector<double> out;
  for (double x : nodes) {
    if (out.empty() || x - out.back() > 1e-14 * (1.0 + std::abs(x))) {
      out.push_back(x);
    }
  }
  return Eigen::Map<const Eigen::VectorXd>(out.data(),
                                           static_cast<Eigen::Index>(out.size()));
}

void append(std::vector<double>& nodes, double a, double b, Eigen::Index n) {
  const Eigen::VectorXd g = uniform_grid(a, b, n);
  nodes.insert(nodes.end(), g.data(), g.data() + g.size());
}

// w^{4/(n-2)} g written as a band: lapse and radius both scale by
// w^{2/(n-2)}.
BandMetric conformal_band(const BandMetric& g, const SampledFn& w) {
  const double p = 2.0 / (g.n.value() - 2.0);
  BandMetric out;
  out.n = g.n;
  out.a = g.a;
  out.b = g.b;
  out.grid = w.grid();
  auto scale = [w, p](double t) { return pow(w.jet(t), p); };
  const Profile lapse = g.lapse, radius = g.radius;
  out.lapse = Profile::analytic(
      [lapse, scale](double t) { return scale(t) * lapse.jet(t); });
  out.radius = Profile::analytic(
      [radius, scale](double t) { return scale(t) * radius.jet(t); });
  return out;
}

double volume_density(const BandMetric& g, double t) {
  return g.lapse(t) * unit_sphere_volume(g.n.slice()) *
         std::pow(g.radius(t), g.n.slice());
}

// Trapezoid rule of f dmu over the nodes of `grid`.
template <typename F>
double band_integral(const BandMetric& g, const Eigen::VectorXd& grid, F&& f) {
  double sum = 0.0;
  double prev = f(grid(0)) * volume_density(g, grid(0));
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    const double cur = f(grid(i)) * volume_density(g, grid(i));
    sum += 0.5 * (prev + cur) * (grid(i) - grid(i - 1));
    prev = cur;
  }
  return sum;
}

}  // namespace

double radius_from_volume(Dimension n, double volume) {
  if (!(volume > 0.0)) fail(ErrorKind::kPrecondition, "volume must be positive");
  return std::pow(volume / unit_sphere_volume(n.slice()), 1.0 / n.slice());
}

double schwarzschild_mass(Dimension n, double radius, double H) {
  const double x = H * radius / n.slice();
  return 0.5 * std::pow(radius, n.value() - 2) * (1.0 - x * x);
}

CobordismBand schwarzschild_band(Dimension n, double V1, double H1, double V2,
                                 double H2, Eigen::Index intervals) {
  if (!(V1 > 0.0) || !(V2 > 0.0) || !(H1 > 0.0) || !(H2 > 0.0)) {
    fail(ErrorKind::kPrecondition, "volumes and mean curvatures must be positive");
  }
  CobordismBand out;
  out.r1 = radius_from_volume(n, V1);
  out.r2 = radius_from_volume(n, V2);
  out.m1 = schwarzschild_mass(n, out.r1, H1);
  out.m2 = schwarzschild_mass(n, out.r2, H2);
  if (!(V1 < V2)) {
    out.violated = "V₁ < V₂";
    return out;
  }
  if (!(out.m1 <= out.m2)) {
    out.violated = "m₁ ≤ m₂";
    return out;
  }

  const double r1 = out.r1, r2 = out.r2, m1 = out.m1, dm = out.m2 - out.m1;
  const Profile mass = Profile::analytic([r1, r2, m1, dm](double r) {
    const double w = r2 - r1;
    const double x = (r - r1) / w;
    return Jet{m1 + dm * x * x * (3.0 - 2.0 * x),
               dm * 6.0 * x * (1.0 - x) / w, dm * 6.0 * (1.0 - 2.0 * x) / (w * w)};
  });
  BandMetric g = mass_function_band(n, mass, r1, r2, intervals);
  g.tag = tag::SchwarzschildBand{out.m1, out.m2};

  const double H_lower = slice_geometry(g, g.a).H;
  const double H_upper = slice_geometry(g, g.b).H;
  if (std::abs(H_lower - H1) > kBoundaryTolerance ||
      std::abs(H_upper - H2) > kBoundaryTolerance) {
    fail(ErrorKind::kConstruction, "Schwarzschild band misses the boundary data");
  }
  out.min_R = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < g.grid.size(); ++i) {
    out.min_R = std::min(out.min_R, scalar_curvature_at(g, g.grid(i)));
  }
  if (out.min_R < -1e-10) {
    fail(ErrorKind::kConstruction, "Schwarzschild band has negative scalar "
                                   "curvature: " + std::to_string(out.min_R));
  }
  out.band = std::move(g);
  return out;
}

namespace {

struct CollarGeometry {
  const BandMetric* g1;
  ArclengthMap distance;
  double amplitude;
  double depth;
  double bend_depth;
};

// 0 for tau <= -depth, 1 for tau >= -bend_depth.
Jet collar_cutoff(const Jet& tau, double depth, double bend_depth) {
  return smooth_step((tau + depth) / (depth - bend_depth));
}

BandMetric bent_band(const CollarGeometry& c,
                     const std::function<Jet(const Jet&)>& shape) {
  BandMetric out = *c.g1;
  out.tag = std::monostate{};
  out.deviation.reset();
  const Profile lapse = c.g1->lapse, radius = c.g1->radius;
  const ArclengthMap distance = c.distance;
  const double m = c.amplitude, depth = c.depth, bend = c.bend_depth;
  out.radius = Profile::analytic([=](double t) {
    const Jet u = lapse.jet(t);
    const Jet tau{distance.s_of_t(t), u.value, u.d1};
    if (tau.value <= -depth) return radius.jet(t);
    const Jet lambda = shape(tau) * collar_cutoff(tau, depth, bend);
    return (1.0 + m * lambda) * radius.jet(t);
  });
  return out;
}

double min_curvature_over(const BandMetric& g, const ArclengthMap& distance,
                          double tau_lo) {
  double lo = std::numeric_limits<double>::infinity();
  const Eigen::VectorXd taus = uniform_grid(tau_lo, 0.0, 400);
  for (Eigen::Index i = 0; i < taus.size(); ++i) {
    lo = std::min(lo, scalar_curvature_at(g, distance.t_of_s(taus(i))));
  }
  return lo;
}

void check_factor(const BandMetric& g, const BandMetric& g1,
                  const ArclengthMap& distance, double depth) {
  const Eigen::VectorXd taus = uniform_grid(-depth, 0.0, 400);
  for (Eigen::Index i = 0; i < taus.size(); ++i) {
    const double t = distance.t_of_s(taus(i));
    if (!(g.radius(t) / g1.radius(t) > 0.0)) {
      fail(ErrorKind::kConstruction,
           "degenerate collar factor 1 + m lambda <= 0 at tau = " +
               std::to_string(taus(i)));
    }
  }
}

}  // namespace

CollarResult collar_bend(const BandMetric& g1, double target_H,
                         const CollarSpec& spec) {
  const double H1 = slice_geometry(g1, g1.b).H;
  CollarResult out;
  if (target_H == H1) {
    out.band = g1;
    out.boundary_H = H1;
    return out;
  }
  if (!(H1 > target_H)) {
    fail(ErrorKind::kPrecondition,
         "collar bend needs H of the boundary above the target");
  }
  if (!(spec.depth > spec.bend_depth) || !(spec.bend_depth > 0.0)) {
    fail(ErrorKind::kPrecondition, "collar needs 0 < bend depth < depth");
  }
  CollarGeometry c{&g1, ArclengthMap(g1, g1.b), (H1 - target_H) / g1.n.slice(),
                   spec.depth, spec.bend_depth};
  if (c.distance.s_min() > -spec.depth) {
    fail(ErrorKind::kPrecondition, "collar is deeper than the band");
  }
  out.amplitude = c.amplitude;

  auto finish = [&](BandMetric band) {
    check_factor(band, g1, c.distance, spec.depth);
    out.min_R_bend = min_curvature_over(band, c.distance, -spec.bend_depth);
    out.min_R_collar = min_curvature_over(band, c.distance, -spec.depth);
    std::vector<double> nodes(g1.grid.data(), g1.grid.data() + g1.grid.size());
    const Eigen::VectorXd taus = uniform_grid(-spec.depth, 0.0, 200);
    for (Eigen::Index i = 0; i < taus.size(); ++i) {
      nodes.push_back(std::clamp(c.distance.t_of_s(taus(i)), g1.a, g1.b));
    }
    band.grid = merge_grids(std::move(nodes));
    out.boundary_H = slice_geometry(band, band.b).H;
    out.band = std::move(band);
  };

  if (spec.shape) {
    const Profile shape = *spec.shape;
    const Jet at0 = shape.jet(0.0);
    if (std::abs(at0.value) > 1e-12 || std::abs(at0.d1 + 1.0) > 1e-12) {
      fail(ErrorKind::kPrecondition, "collar shape needs lambda(0) = 0, lambda'(0) = -1");
    }
    finish(bent_band(c, [shape](const Jet& tau) {
      const Jet l = shape.jet(tau.value);
      return chain(tau, l.value, l.d1, l.d2);
    }));
    return out;
  }

  auto default_band = [&](double curvature) {
    return bent_band(c, [curvature](const Jet& tau) {
      return -tau + 0.5 * curvature * tau * tau;
    });
  };
  auto positive = [&](double curvature) {
    try {
      const BandMetric band = default_band(curvature);
      check_factor(band, g1, c.distance, spec.depth);
      return min_curvature_over(band, c.distance, -spec.bend_depth) > 0.0;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kConstruction) return false;
      throw;
    }
  };
  double good = 0.0;
  if (!positive(good)) {
    double bad = 0.0;
    good = -1.0;
    while (!positive(good)) {
      bad = good;
      good *= 2.0;
      if (good < -1e12) {
        fail(ErrorKind::kConstruction,
             "no collar curvature makes the bend positive");
      }
    }
    while (good - bad < -1e-3 * std::abs(good)) {
      const double mid = 0.5 * (good + bad);
      (positive(mid) ? good : bad) = mid;
    }
  }
  out.shape_curvature = good;
  finish(default_band(good));
  return out;
}

CorneredMetric glue_with_corner(const BandMetric& lower, const BandMetric& upper) {
  if (!(lower.n == upper.n)) {
    fail(ErrorKind::kDimension, "glued bands must share the dimension");
  }
  const double r_lower = lower.radius(lower.b), r_upper = upper.radius(upper.a);
  if (std::abs(r_lower - r_upper) > kInterfaceTolerance * std::max(1.0, r_lower)) {
    fail(ErrorKind::kPrecondition,
         "interface radii differ: " + std::to_string(r_lower) + " vs " +
             std::to_string(r_upper));
  }
  CorneredMetric c{lower, upper, r_lower, slice_geometry(lower, lower.b).H,
                   slice_geometry(upper, upper.a).H};
  return c;
}

double mollifier_kernel(double x) {
  const double a = std::abs(x);
  if (a <= 1.0 / 3.0) return 1.0;
  if (a >= 2.0 / 3.0) return 0.0;
  return 1.0 - smooth_step(variable(3.0 * a - 1.0)).value;
}

namespace {

// One side of the corner in its distance coordinate.
struct Side {
  const BandMetric* g;
  ArclengthMap distance;

  // r and its first two derivatives in the distance coordinate.
  Jet radius_jet(double s) const {
    const double t = distance.t_of_s(s);
    const Jet r = g->radius.jet(t);
    const Jet u = g->lapse.jet(t);
    return {r.value, r.d1 / u.value,
            (r.d2 - r.d1 * u.d1 / u.value) / (u.value * u.value)};
  }
  double curvature(double s) const {
    return scalar_curvature_at(*g, distance.t_of_s(s));
  }
};

class CornerSmoother {
 public:
  CornerSmoother(const CorneredMetric& c, double delta)
      : lower_{&c.lower, ArclengthMap(c.lower, c.lower.b)},
        upper_{&c.upper, ArclengthMap(c.upper, c.upper.a)},
        delta_(delta),
        epsilon_(delta * delta / 100.0) {
    kink_ = upper_.radius_jet(0.0).d1 - lower_.radius_jet(0.0).d1;
  }

  double s_min() const { return lower_.distance.s_min(); }
  double s_max() const { return upper_.distance.s_max(); }
  double epsilon() const { return epsilon_; }

  Jet piecewise(double s) const {
    return s < 0.0 ? lower_.radius_jet(s) : upper_.radius_jet(s);
  }
  double piecewise_curvature(double s) const {
    return s < 0.0 ? lower_.curvature(s) : upper_.curvature(s);
  }

  Jet radius(double s) const {
    const double a = std::abs(s);
    const Jet p = piecewise(s);
    if (a >= 0.5 * delta_) return p;
    const Jet blend =
        1.0 - smooth_step((Jet{a, s < 0.0 ? -1.0 : 1.0, 0.0} - 0.25 * delta_) /
                          (0.25 * delta_));
    return p + blend * (convolved(s) - p);
  }

 private:
  // (phi_eps * r, phi_eps * r', phi_eps * r'' + [r'] phi_eps(s)).
  Jet convolved(double s) const {
    const double e = epsilon_;
    std::vector<double> cuts = {s - 2.0 * e / 3.0, s - e / 3.0, s + e / 3.0,
                                s + 2.0 * e / 3.0};
    if (std::abs(s) < 2.0 * e / 3.0) cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    Jet sum{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double lo = cuts[k], hi = cuts[k + 1];
      if (hi - lo <= 0.0) continue;
      const double mid = 0.5 * (lo + hi);
      // The side is fixed on each piece; a cut at 0 separates them.
      const Side& side = mid < 0.0 ? lower_ : upper_;
      for (int comp = 0; comp < 3; ++comp) {
        const double v = gauss_legendre(
            [&](double y) {
              const Jet r = side.radius_jet(y);
              const double f = comp == 0 ? r.value : comp == 1 ? r.d1 : r.d2;
              return mollifier_kernel((s - y) / e) / e * f;
            },
            lo, hi, 1);
        (comp == 0 ? sum.value : comp == 1 ? sum.d1 : sum.d2) += v;
      }
    }
    sum.d2 += kink_ * mollifier_kernel(s / e) / e;
    return sum;
  }

  Side lower_;
  Side upper_;
  double delta_;
  double epsilon_;
  double kink_ = 0.0;
};

}  // namespace

MollifyResult mollify_corner(const CorneredMetric& c, double delta) {
  if (!c.admissible()) {
    fail(ErrorKind::kPrecondition, "corner is not admissible: H- < H+");
  }
  if (!(delta > 0.0)) fail(ErrorKind::kPrecondition, "delta must be positive");
  auto smoother = std::make_shared<const CornerSmoother>(c, delta);
  const double half = 0.5 * delta;
  if (!(-smoother->s_min() > half) || !(smoother->s_max() > half)) {
    fail(ErrorKind::kPrecondition, "mollification collar wider than the bands");
  }
  const double e = smoother->epsilon();

  MollifyResult out;
  out.delta = delta;
  out.epsilon = e;
  BandMetric& g = out.band;
  g.n = c.lower.n;
  g.a = smoother->s_min();
  g.b = smoother->s_max();
  g.lapse = Profile::constant(1.0);
  g.radius = Profile::analytic([smoother](double s) { return smoother->radius(s); });
  std::vector<double> nodes;
  append(nodes, g.a, -half, 400);
  append(nodes, -half, -e, 200);
  append(nodes, -e, e, 400);
  append(nodes, e, half, 200);
  append(nodes, half, g.b, 400);
  g.grid = merge_grids(std::move(nodes));

  const int n = g.n.value();
  const double omega = unit_sphere_volume(n - 1);
  for (Eigen::Index i = 0; i < g.grid.size(); ++i) {
    const double s = g.grid(i);
    const double R = std::abs(scalar_curvature_at(g, s));
    if (std::abs(s) <= half) {
      out.sup_R_collar = std::max(out.sup_R_collar, R);
    } else {
      out.sup_R_outside = std::max(out.sup_R_outside, R);
    }
  }

  const std::vector<double> cuts = {-half, -0.5 * half, -2.0 * e / 3.0, -e / 3.0,
                                    0.0,   e / 3.0,     2.0 * e / 3.0,  0.5 * half,
                                    half};
  auto collar_integral = [&](auto&& density) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      sum += gauss_legendre(density, cuts[k], cuts[k + 1], 8);
    }
    return sum;
  };
  auto area_at = [&](const BandMetric& band, double s) {
    return omega * std::pow(band.radius(s), n - 1);
  };
  out.collar_curvature = collar_integral(
      [&](double s) { return scalar_curvature_at(g, s) * area_at(g, s); });
  out.negative_part = collar_integral([&](double s) {
    const double neg = std::max(0.0, -scalar_curvature_at(g, s));
    return std::pow(neg, 0.5 * n) * area_at(g, s);
  });
  out.collar_background = collar_integral([&](double s) {
    return smoother->piecewise_curvature(s) * omega *
           std::pow(smoother->piecewise(s).value, n - 1);
  });
  out.jump_mass = 2.0 * c.jump() * omega * std::pow(c.radius, n - 1);
  return out;
}

ConformalResult conformal_solve(const BandMetric& g, const Profile& h,
                                ConformalMode mode, const ConformalOptions& opts) {
  const bool hyperbolic = std::holds_alternative<tag::Hyperbolic>(g.tag) ||
                          std::holds_alternative<tag::HyperbolicQS>(g.tag);
  if (mode == ConformalMode::kDecayAtInfinity && hyperbolic) {
    fail(ErrorKind::kPrecondition,
         "decay at infinity needs an asymptotically flat band");
  }
  const int n = g.n.value();
  const Eigen::VectorXd grid = refine_grid(g.grid, opts.refine);

  ConformalResult out;
  const double negative = band_integral(g, grid, [&](double t) {
    return std::pow(std::max(0.0, -h(t)), 0.5 * n);
  });
  out.smallness = std::pow(negative, 2.0 / n);
  if (out.smallness > opts.smallness_bound) {
    fail(ErrorKind::kPrecondition,
         "potential too large: (int |h_-|^{n/2})^{2/n} = " +
             std::to_string(out.smallness) + " exceeds " +
             std::to_string(opts.smallness_bound));
  }

  const RadialSolution sol = solve_radial(
      g, grid, [&](double t) { return h(t); }, [](double) { return 0.0; },
      mode == ConformalMode::kCompactBVP ? FarBoundary::kDirichlet
                                         : FarBoundary::kDecay);
  if (!(sol.w.values().minCoeff() > 0.0)) {
    fail(ErrorKind::kSolver, "conformal factor is not positive");
  }
  out.factor = sol.w;
  out.deformed = conformal_band(g, sol.w);
  const double half_c = 0.5 * conformal_constant(g.n);
  out.H_lower = slice_geometry(g, g.a).H;
  out.H_upper = slice_geometry(g, g.b).H;
  out.outward_slope_lower = -sol.slope_lower / g.lapse(g.a);
  out.outward_slope_upper = sol.slope_upper / g.lapse(g.b);
  // Increasing-t convention on both ends; w = 1 there.
  const double p = 2.0 / (n - 2.0);
  const double w_b = sol.w.values()(sol.w.size() - 1);
  out.H_tilde_lower = out.H_lower + half_c * sol.slope_lower / g.lapse(g.a);
  out.H_tilde_upper =
      std::pow(w_b, -p) * (out.H_upper + half_c * sol.slope_upper /
                                             (w_b * g.lapse(g.b)));
  return out;
}

namespace {

double max_over(const Eigen::VectorXd& v) { return v.size() ? v.maxCoeff() : 0.0; }

}  // namespace

PerturbResult scalar_perturb(const BandMetric& g, BumpRegion bump,
                             double epsilon, const PerturbOptions& opts) {
  if (!(epsilon >= 0.0)) fail(ErrorKind::kPrecondition, "epsilon must be >= 0");
  if (!(bump.lo >= g.a) || !(bump.hi <= g.b) || !(bump.hi > bump.lo)) {
    fail(ErrorKind::kPrecondition, "bump region must lie inside the band");
  }
  const int n = g.n.value();
  const double c = conformal_constant(g.n);
  const Eigen::VectorXd grid = refine_grid(g.grid, opts.refine);
  const std::function<double(double)> curvature =
      opts.curvature ? opts.curvature
                     : [&g](double t) { return scalar_curvature_at(g, t); };

  Eigen::VectorXd R(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) R(i) = curvature(grid(i));
  const double scale = 1.0 + R.cwiseAbs().maxCoeff();
  if (R.minCoeff() < -1e-10 * scale) {
    fail(ErrorKind::kPrecondition, "scalar curvature must be nonnegative; min R = " +
                                       std::to_string(R.minCoeff()));
  }
  Eigen::VectorXd in_bump(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    in_bump(i) = grid(i) >= bump.lo && grid(i) <= bump.hi ? R(i) : 0.0;
  }
  const double R_peak = max_over(in_bump);
  if (!(R_peak > 0.0)) {
    fail(ErrorKind::kPrecondition, "scalar curvature vanishes on the bump region");
  }

  // eta = 1 on the middle of the bump where R is not small, 0 where R <= 0.
  const double quarter = 0.25 * (bump.hi - bump.lo);
  const double R_ref = 0.1 * R_peak;
  Eigen::VectorXd eta(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double t = grid(i);
    if (t <= bump.lo || t >= bump.hi || R(i) <= 0.0) {
      eta(i) = 0.0;
      continue;
    }
    eta(i) = smooth_step(variable((t - bump.lo) / quarter)).value *
             smooth_step(variable((bump.hi - t) / quarter)).value *
             smooth_step(variable(R(i) / R_ref)).value;
  }
  const SampledFn potential(grid, eta.cwiseProduct(R) / c);

  const RadialSolution sol = solve_radial(
      g, grid, [&](double t) { return potential(t); },
      [epsilon](double) { return -epsilon; });
  const Eigen::VectorXd& w = sol.w.values();
  if (!(w.minCoeff() > 0.0)) {
    fail(ErrorKind::kConstruction,
         "epsilon too large: the conformal factor is not positive");
  }

  PerturbResult out;
  out.factor = sol.w;
  out.band = conformal_band(g, sol.w);
  out.margin_lower = -0.5 * c * sol.slope_lower / g.lapse(g.a);
  out.margin_upper = 0.5 * c * sol.slope_upper / g.lapse(g.b);
  const double power = -(n + 2.0) / (n - 2.0);
  out.min_R = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double value =
        std::pow(w(i), power) * ((1.0 - eta(i)) * R(i) * w(i) + c * epsilon);
    out.min_R = std::min(out.min_R, value);
  }
  if (opts.min_margin && out.margin_upper < *opts.min_margin) {
    fail(ErrorKind::kConstruction,
         "epsilon too large: boundary margin " + std::to_string(out.margin_upper) +
             " below " + std::to_string(*opts.min_margin));
  }
  return out;
}

LowerBoundResult conformal_lower_bound(const BandMetric& g, double C,
                                       const ConformalOptions& opts) {
  if (!(C >= 0.0)) fail(ErrorKind::kPrecondition, "C must be nonnegative");
  const int n = g.n.value();
  const double c = conformal_constant(g.n);
  const Eigen::VectorXd grid = refine_grid(g.grid, opts.refine);
  Eigen::VectorXd R(grid.size()), h(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    R(i) = scalar_curvature_at(g, grid(i));
    h(i) = -std::max(0.0, -(R(i) + C)) / c;
  }
  ConformalOptions fine = opts;
  fine.refine = 1;
  BandMetric refined = g;
  refined.grid = grid;

  LowerBoundResult out;
  out.conformal =
      conformal_solve(refined, Profile::sampled(SampledFn(grid, h)),
                      ConformalMode::kCompactBVP, fine);
  out.bound = -c * C;
  const Eigen::VectorXd& w = out.conformal.factor.values();
  const double power = -4.0 / (n - 2.0);
  out.min_R = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    out.min_R = std::min(out.min_R, std::pow(w(i), power) * (R(i) - c * h(i)));
  }
  if (out.min_R < out.bound - 1e-10 * (1.0 + std::abs(out.bound))) {
    fail(ErrorKind::kConstruction, "deformed scalar curvature below -c(n) C");
  }
  return out;
}

PipelineResult nnsc_smooth_pipeline(const CorneredMetric& c, double delta,
                                    double epsilon, const ConformalOptions& opts) {
  PipelineResult out;
  out.mollified = mollify_corner(c, delta);
  const BandMetric& g = out.mollified.band;
  const int n = g.n.value();
  const double cn = conformal_constant(g.n);
  const Eigen::VectorXd& grid = g.grid;
  Eigen::VectorXd R(grid.size()), h(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    R(i) = scalar_curvature_at(g, grid(i));
    h(i) = -std::max(0.0, -R(i)) / cn;
  }
  ConformalOptions fine = opts;
  fine.refine = 1;
  out.conformal = conformal_solve(g, Profile::sampled(SampledFn(grid, h)),
                                  ConformalMode::kCompactBVP, fine);

  // R of w^{4/(n-2)} g at the nodes is w^{-4/(n-2)} (R + R_-) >= 0.
  const SampledFn w = out.conformal.factor;
  Eigen::VectorXd R_conf(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    R_conf(i) = std::pow(w.values()(i), -4.0 / (n - 2.0)) * (R(i) - cn * h(i));
  }
  const SampledFn curvature(grid, R_conf);
  PerturbOptions perturb;
  perturb.curvature = [curvature, grid](double t) {
    // Exact at nodes; the solver only samples nodes.
    const Eigen::Index i = std::lower_bound(grid.data(), grid.data() + grid.size(), t) -
                           grid.data();
    if (i < grid.size() && grid(i) == t) return curvature.values()(i);
    return curvature(t);
  };
  out.perturbed = scalar_perturb(out.conformal.deformed, BumpRegion{g.a, g.b},
                                 epsilon, perturb);
  return out;
}

}  // namespace nnsc
