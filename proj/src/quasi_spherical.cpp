#include "nnsc/quasi_spherical.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nnsc/error.hpp"
#include "nnsc/jet_math.hpp"
#include "nnsc/quadrature.hpp"

namespace nnsc {

namespace {

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

void check_problem(const QsProblem& p) {
  if (!(p.u0 > 0.0) || !std::isfinite(p.u0)) {
    fail(ErrorKind::kPrecondition, "initial lapse u0 must be positive");
  }
  if (!(p.end > p.start)) {
    fail(ErrorKind::kPrecondition, "start slice must precede end slice");
  }
}

// Solves u' = (u - u^3) G(t) through s = ln|u - 1|:  s' = -u (1 + u) G(t).
// Fills lapse samples and the deviation trace.
struct DeviationSolve {
  Eigen::VectorXd t;
  Eigen::VectorXd u;
  LapseDeviation deviation;
};

template <typename G>
DeviationSolve solve_fixed_point_form(const G& coefficient, double u0,
                                      double t0, double t1,
                                      const StepControl& control) {
  DeviationSolve out;
  if (u0 == 1.0) {
    const auto steps = static_cast<Eigen::Index>(
        std::ceil((t1 - t0) / control.step - 1e-9));
    out.t = uniform_grid(t0, t1, std::max<Eigen::Index>(steps, 3));
    out.u = Eigen::VectorXd::Ones(out.t.size());
    out.deviation.sign = 0;
    out.deviation.log_abs =
        SampledFn(out.t, Eigen::VectorXd::Zero(out.t.size()));
    return out;
  }
  const int sign = u0 > 1.0 ? 1 : -1;
  auto lapse = [sign](double s) { return 1.0 + sign * std::exp(s); };
  auto rhs = [&](double t, double s) {
    const double u = lapse(s);
    return -u * (1.0 + u) * coefficient(t);
  };
  auto admissible = [&](double, double s) {
    const double u = lapse(s);
    return u > kLapseFloor && u < kLapseCeiling;
  };
  const ScalarTrajectory traj = integrate_scalar(
      rhs, std::log(std::abs(u0 - 1.0)), t0, t1, control, admissible);
  out.t = to_vector(traj.t);
  Eigen::VectorXd s = to_vector(traj.y);
  out.u = s.unaryExpr(lapse);
  out.deviation.sign = sign;
  out.deviation.log_abs = SampledFn(out.t, s);
  return out;
}

double sinh_cosh_weight(int n, double rho) {
  return std::pow(std::sinh(rho), n - 2) * std::cosh(rho) * std::cosh(rho);
}

}  // namespace

BandMetric qs_euclidean_solve(const QsProblem& p) {
  check_problem(p);
  if (!std::holds_alternative<background::Euclidean>(p.background)) {
    fail(ErrorKind::kPrecondition, "qs_euclidean_solve needs a Euclidean background");
  }
  if (!(p.start > 0.0)) {
    fail(ErrorKind::kPrecondition, "Euclidean start radius must be positive");
  }
  const int n = p.n.value();
  auto coefficient = [n](double r) { return (n - 2.0) / (2.0 * r); };
  DeviationSolve sol =
      solve_fixed_point_form(coefficient, p.u0, p.start, p.end, p.step);

  BandMetric g;
  g.n = p.n;
  g.a = p.start;
  g.b = p.end;
  g.grid = sol.t;
  g.lapse = Profile::sampled(SampledFn(sol.t, sol.u));
  g.radius = Profile::analytic([](double r) { return Jet{r, 1.0, 0.0}; });
  g.deviation = std::move(sol.deviation);
  return g;
}

BandMetric qs_hyperbolic_solve(const QsProblem& p) {
  check_problem(p);
  const auto* bg = std::get_if<background::Hyperbolic>(&p.background);
  if (!bg) {
    fail(ErrorKind::kPrecondition, "qs_hyperbolic_solve needs a hyperbolic background");
  }
  const double kappa = bg->kappa;
  if (!(kappa > 0.0)) fail(ErrorKind::kPrecondition, "kappa must be positive");
  if (!(p.start > 0.0)) {
    fail(ErrorKind::kPrecondition, "hyperbolic start slice must be positive");
  }
  // Solve the kappa = 1 problem in rho = kappa t and scale back.
  const int n = p.n.value();
  auto coefficient = [n](double rho) {
    const double sh = std::sinh(rho);
    return 0.5 * ((n - 2.0) / (sh * sh) + n) * std::tanh(rho);
  };
  StepControl control = p.step;
  control.step *= kappa;
  DeviationSolve sol = solve_fixed_point_form(
      coefficient, p.u0, kappa * p.start, kappa * p.end, control);
  const double rho2 = kappa * p.start;

  BandMetric g;
  g.n = p.n;
  g.a = p.start;
  g.b = p.end;
  g.grid = sol.t / kappa;
  g.grid(0) = p.start;
  g.grid(g.grid.size() - 1) = p.end;
  g.lapse = Profile::sampled(SampledFn(g.grid, sol.u));
  g.radius = Profile::analytic([kappa](double t) {
    const double s = std::sinh(kappa * t);
    return Jet{s / kappa, std::cosh(kappa * t), kappa * s};
  });
  if (sol.deviation.sign != 0) {
    sol.deviation.log_abs =
        SampledFn(g.grid, sol.deviation.log_abs.values());
  } else {
    sol.deviation.log_abs =
        SampledFn(g.grid, Eigen::VectorXd::Zero(g.grid.size()));
  }
  g.deviation = std::move(sol.deviation);
  const double c0 = p.u0 == 1.0 ? std::numeric_limits<double>::infinity()
                                 : hyperbolic_c0(p.n, rho2, p.u0);
  g.tag = tag::HyperbolicQS{c0, p.u0, rho2};
  return g;
}

double hyperbolic_c0(Dimension n, double rho2, double u0) {
  if (!(u0 > 0.0) || u0 == 1.0) {
    fail(ErrorKind::kDomain, "c0 needs u0 > 0 and u0 != 1");
  }
  const double q = u0 * u0 / (1.0 - u0 * u0);
  return q / sinh_cosh_weight(n.value(), rho2);
}

double hyperbolic_u0_for_c0(Dimension n, double rho2, double c0) {
  if (!(c0 > 0.0)) fail(ErrorKind::kDomain, "c0 must be positive");
  const double q = c0 * sinh_cosh_weight(n.value(), rho2);
  return std::sqrt(q / (1.0 + q));
}

double qs_closed_form_hyperbolic(Dimension n, double rho2, double u0,
                                 double rho) {
  if (u0 == 1.0) return 1.0;
  const double c0 = hyperbolic_c0(n, rho2, u0);
  const double denom = 1.0 + c0 * sinh_cosh_weight(n.value(), rho);
  const double u2 = 1.0 - 1.0 / denom;
  if (!(u2 > 0.0) || !(denom > 0.0)) {
    fail(ErrorKind::kDomain,
         "closed form has u^2 <= 0 at rho = " + std::to_string(rho));
  }
  return std::sqrt(u2);
}

namespace {

struct PathBackground {
  Profile radius;
  double target = 0.0;
  bool require_monotone = false;
};

PathBackground path_background(const QsProblem& p) {
  const int n = p.n.value();
  PathBackground out;
  if (const auto* rp = std::get_if<background::RoundPath>(&p.background)) {
    const double c = rp->gamma_radius * rp->gamma_radius;
    const double a2 = rp->a2;
    out.radius = Profile::analytic([c, a2](double t) {
      const Jet x = variable(t);
      return exp(a2 * x) * sqrt(c * (1.0 - x) + x);
    });
    out.require_monotone = true;
    if (rp->K) {
      out.target = *rp->K;
    } else {
      // Minimum of (n-1)(n-2)/rbar^2 over the path.
      double K = std::numeric_limits<double>::infinity();
      const Eigen::VectorXd ts = uniform_grid(p.start, p.end, 2000);
      for (Eigen::Index i = 0; i < ts.size(); ++i) {
        const double r = out.radius(ts(i));
        K = std::min(K, (n - 1.0) * (n - 2.0) / (r * r));
      }
      out.target = K;
    }
  } else if (const auto* pp = std::get_if<background::PscPath>(&p.background)) {
    const double c = pp->gamma_radius * pp->gamma_radius;
    out.radius = Profile::analytic([c](double t) {
      const Jet x = variable(t);
      const Jet step = smooth_step(x * (6.0 / 5.0));
      const Jet scale = c + (1.0 - c) * step;
      return sqrt((1.0 + x * x) * scale);
    });
    out.target = pp->delta0;
    // Slice scalar curvature must dominate 2 delta0 along the path.
    const Eigen::VectorXd ts = uniform_grid(p.start, p.end, 2000);
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
      const double r = out.radius(ts(i));
      if ((n - 1.0) * (n - 2.0) / (r * r) < 2.0 * pp->delta0) {
        fail(ErrorKind::kPrecondition,
             "slice scalar curvature below 2 delta0 on the path");
      }
    }
  } else if (const auto* ep =
                 std::get_if<background::ExplicitPath>(&p.background)) {
    out.radius = ep->slice_radius;
    out.target = ep->target;
  } else {
    fail(ErrorKind::kPrecondition, "qs_path_solve needs a path background");
  }
  return out;
}

struct PathCoefficients {
  double H_bar, R_slice, R_background;
};

PathCoefficients path_coefficients(int n, const Jet& r) {
  const double k = n - 1.0;
  PathCoefficients c;
  c.H_bar = k * r.d1 / r.value;
  c.R_slice = k * (k - 1.0) / (r.value * r.value);
  c.R_background =
      k * (k - 1.0) * (1.0 - r.d1 * r.d1) / (r.value * r.value) -
      2.0 * k * r.d2 / r.value;
  return c;
}

}  // namespace

double path_initial_lapse(const QsProblem& p, double H2) {
  if (!(H2 > 0.0)) fail(ErrorKind::kPrecondition, "H2 must be positive");
  const PathBackground bg = path_background(p);
  const double H_bar = path_coefficients(p.n.value(), bg.radius.jet(p.start)).H_bar;
  if (!(H_bar > 0.0)) {
    fail(ErrorKind::kPrecondition, "Hbar(0) must be positive");
  }
  return H_bar / H2;
}

PathSolution qs_path_solve(const QsProblem& p) {
  check_problem(p);
  const PathBackground bg = path_background(p);
  const int n = p.n.value();

  const Eigen::VectorXd probe = uniform_grid(p.start, p.end, 2000);
  for (Eigen::Index i = 0; i < probe.size(); ++i) {
    const Jet r = bg.radius.jet(probe(i));
    if (!(r.value > 0.0)) {
      fail(ErrorKind::kPrecondition, "slice radius must stay positive");
    }
    if (bg.require_monotone && !(r.d1 > 0.0)) {
      fail(ErrorKind::kPrecondition,
           "slice metric not strictly increasing along the path; increase a2");
    }
    if (!(r.d1 > 0.0)) {
      fail(ErrorKind::kPrecondition,
           "Hbar must stay positive along the path; t = " +
               std::to_string(probe(i)));
    }
  }

  const double T = bg.target;
  auto rhs = [&](double t, double u) {
    const PathCoefficients c = path_coefficients(n, bg.radius.jet(t));
    return (0.5 * (u - u * u * u) * c.R_slice - 0.5 * u * c.R_background +
            0.5 * u * u * u * T) /
           c.H_bar;
  };
  auto admissible = [](double, double u) {
    return u > kLapseFloor && u < kLapseCeiling;
  };
  const ScalarTrajectory traj =
      integrate_scalar(rhs, p.u0, p.start, p.end, p.step, admissible);

  PathSolution out;
  out.band.n = p.n;
  out.band.a = p.start;
  out.band.b = p.end;
  out.band.grid = to_vector(traj.t);
  const Eigen::VectorXd u = to_vector(traj.y);
  out.band.lapse = Profile::sampled(SampledFn(out.band.grid, u));
  out.band.radius = bg.radius;
  out.K = T;
  out.H_bar_start = path_coefficients(n, bg.radius.jet(p.start)).H_bar;
  out.H_bar_end = path_coefficients(n, bg.radius.jet(p.end)).H_bar;
  out.u_end = u(u.size() - 1);
  out.H2_prime = out.H_bar_end / out.u_end;
  out.u_sup = u.cwiseAbs().maxCoeff();
  return out;
}

namespace {

struct LinearFit {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
};

// Least-squares a + b e^{-x} through the points.
LinearFit fit_exponential_tail(const std::vector<double>& x,
                               const std::vector<double>& y) {
  Eigen::MatrixXd A(static_cast<Eigen::Index>(x.size()), 2);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    A(k, 0) = 1.0;
    A(k, 1) = std::exp(-x[i]);
    rhs(k) = y[i];
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(rhs);
  LinearFit fit{coef(0), coef(1), (A * coef - rhs).cwiseAbs().maxCoeff()};
  return fit;
}

const tag::HyperbolicQS& require_hyperbolic_qs(const BandMetric& g) {
  const auto* t = std::get_if<tag::HyperbolicQS>(&g.tag);
  if (!t || !g.deviation) {
    fail(ErrorKind::kExtraction,
         "expansion constants need a band from qs_hyperbolic_solve");
  }
  return *t;
}

}  // namespace

// (U - rho) e^{n rho} = -sign e^{n rho} int_rho^inf e^{s}.
double scaled_U_offset(const BandMetric& g, double rho) {
  require_hyperbolic_qs(g);
  const int n = g.n.value();
  if (g.deviation->sign == 0) return 0.0;
  const LapseDeviation& dev = *g.deviation;
  const SampledFn& s = dev.log_abs;
  auto integrand = [&](double x) { return std::exp(s(x) + n * rho); };
  const int panels =
      std::max(4, static_cast<int>(std::ceil((g.b - rho) * 20.0)));
  double integral = gauss_legendre(integrand, rho, g.b, panels);
  const Jet end = s.jet(g.b);
  const double rate = -end.d1;
  if (!(rate > 0.0)) {
    fail(ErrorKind::kExtraction, "lapse deviation does not decay at the band end");
  }
  integral += std::exp(end.value + n * rho) / rate;
  return -dev.sign * integral;
}

ExpansionConstants extract_expansion_constants(const BandMetric& g) {
  require_hyperbolic_qs(g);
  const int n = g.n.value();
  ExpansionConstants out;
  if (g.deviation->sign == 0) return out;
  if (g.b < 10.0) {
    fail(ErrorKind::kExtraction,
         "solution must reach rho >= 10 for limit extraction");
  }
  const std::vector<double> rho = {0.6 * g.b, 0.8 * g.b, g.b};
  std::vector<double> yu, yU;
  for (double x : rho) {
    yu.push_back(g.deviation->sign * std::exp(g.deviation->log_abs(x) + n * x));
    yU.push_back(scaled_U_offset(g, x));
  }
  const LinearFit fu = fit_exponential_tail(rho, yu);
  const LinearFit fU = fit_exponential_tail(rho, yU);
  out.limit_u = fu.a;
  out.limit_U = fU.a;
  out.residual_u = fu.residual;
  out.residual_U = fU.residual;
  out.consistency = std::abs(out.limit_U + out.limit_u / n);
  if (!std::isfinite(out.limit_u) || !std::isfinite(out.limit_U) ||
      out.consistency > 1e-6 * std::abs(out.limit_u) ||
      fu.residual > 1e-6 * std::abs(out.limit_u)) {
    fail(ErrorKind::kExtraction, "expansion limits did not converge");
  }
  return out;
}

double expansion_constant(Dimension n) {
  static constexpr double kTable[] = {4.0, 8.0, 16.0, 32.0, 64.0};
  return kTable[n.value() - Dimension::kMin];
}

MeasuredConstant measure_expansion_constant(Dimension n, double c0_first,
                                            double c0_second, double rho_max) {
  const double rho2 = std::asinh(1.0);
  auto measure = [&](double c0) {
    QsProblem p;
    p.background = background::Hyperbolic{1.0};
    p.n = n;
    p.start = rho2;
    p.end = rho_max;
    p.u0 = hyperbolic_u0_for_c0(n, rho2, c0);
    const BandMetric g = qs_hyperbolic_solve(p);
    const double c0_used = std::get<tag::HyperbolicQS>(g.tag).c0;
    return -c0_used * extract_expansion_constants(g).limit_u;
  };
  MeasuredConstant m;
  m.first = measure(c0_first);
  m.second = measure(c0_second);
  m.relative_spread =
      std::abs(m.first - m.second) / std::max(std::abs(m.first), 1e-300);
  return m;
}

}  // namespace nnsc
