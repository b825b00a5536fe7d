#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "nnsc/constructions.hpp"
#include "nnsc/curvature.hpp"
#include "nnsc/jet_math.hpp"
#include "nnsc/masses.hpp"
#include "test_support.hpp"

using namespace nnsc;
using nnsc::testing::Gen;
using nnsc::testing::kind_of;

namespace {

constexpr double kPi = std::numbers::pi;
const Dimension kThree(3);

// Volume of the slice, omega_2 r^2.
double volume3(double r) { return 4 * kPi * r * r; }

double schwarzschild_H(double m, double r) { return 2 / r * std::sqrt(1 - 2 * m / r); }

// Non-conservative central differences for w'' + (n-1) w'/r - h w = 0 on
// the flat annulus [a, b], w = 1 at both ends, by the Thomas algorithm.
Eigen::VectorXd thomas_flat(int n, double a, double b, int N,
                            const std::function<double(double)>& h) {
  const double dx = (b - a) / N;
  std::vector<double> lo(N + 1), di(N + 1), up(N + 1), rhs(N + 1);
  di[0] = di[N] = 1;
  rhs[0] = rhs[N] = 1;
  for (int i = 1; i < N; ++i) {
    const double r = a + i * dx;
    lo[i] = 1 / (dx * dx) - (n - 1) / (2 * r * dx);
    up[i] = 1 / (dx * dx) + (n - 1) / (2 * r * dx);
    di[i] = -2 / (dx * dx) - h(r);
  }
  for (int i = 1; i <= N; ++i) {
    const double k = lo[i] / di[i - 1];
    di[i] -= k * up[i - 1];
    rhs[i] -= k * rhs[i - 1];
  }
  Eigen::VectorXd w(N + 1);
  w(N) = rhs[N] / di[N];
  for (int i = N - 1; i >= 0; --i) w(i) = (rhs[i] - up[i] * w(i + 1)) / di[i];
  return w;
}

CobordismBand feasible_band() {
  return schwarzschild_band(kThree, volume3(1), schwarzschild_H(0.1, 1), volume3(2),
                            schwarzschild_H(0.3, 2));
}

}  // namespace

TEST_CASE("schwarzschild band examples") {
  const CobordismBand flat = schwarzschild_band(kThree, 4 * kPi, 2, 16 * kPi, 1);
  REQUIRE(flat.feasible());
  CHECK(flat.m1 == doctest::Approx(0).scale(1));
  CHECK(std::abs(flat.m2) < 1e-14);
  const SampledFn R = scalar_curvature_band(*flat.band);
  CHECK(R.values().cwiseAbs().maxCoeff() < 1e-10);

  const CobordismBand b = feasible_band();
  REQUIRE(b.feasible());
  CHECK(b.m1 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(b.m2 == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(b.r1 == doctest::Approx(1).epsilon(1e-14));
  CHECK(b.r2 == doctest::Approx(2).epsilon(1e-14));
  CHECK(b.min_R >= -1e-10);
  const BandMetric& g = *b.band;
  CHECK(g.radius(g.a) == b.r1);
  CHECK(g.radius(g.b) == b.r2);
  CHECK(slice_geometry(g, g.a).H == doctest::Approx(schwarzschild_H(0.1, 1)).epsilon(1e-8));
  CHECK(slice_geometry(g, g.b).H == doctest::Approx(schwarzschild_H(0.3, 2)).epsilon(1e-8));
  CHECK(adm_mass_fit(g).mass == doctest::Approx(0.3).epsilon(1e-12));

  const CobordismBand down = schwarzschild_band(kThree, volume3(1), schwarzschild_H(0.3, 1),
                                                volume3(2), schwarzschild_H(0.1, 2));
  CHECK(!down.feasible());
  CHECK(down.violated == "m₁ ≤ m₂");
  const CobordismBand shrink = schwarzschild_band(kThree, volume3(2), 1, volume3(1), 2);
  CHECK(!shrink.feasible());
  CHECK(shrink.violated == "V₁ < V₂");
}

TEST_CASE("schwarzschild band curvature matches the mass-function formula") {
  const CobordismBand b = feasible_band();
  const BandMetric& g = *b.band;
  // R = 2 (n-1) m'(r)/r^{n-1} with m the cubic from 0.1 to 0.3 on [1, 2].
  for (double r : {1.1, 1.3, 1.5, 1.8, 1.95}) {
    const double x = r - 1, dm = 0.2 * 6 * x * (1 - x);
    CHECK(scalar_curvature_at(g, r) == doctest::Approx(4 * dm / (r * r)).epsilon(1e-8));
  }
}

TEST_CASE("schwarzschild band rejects a horizon crossing") {
  // m1 = 0 at r = 1 and m2 = 0.9975 at r = 2: the cubic crosses 2m(r) = r.
  CHECK(kind_of([] {
          schwarzschild_band(kThree, volume3(1), 2, volume3(2), 0.1);
        }) == ErrorKind::kConstruction);
}

TEST_CASE("property: feasible Schwarzschild pairs") {
  Gen gen(21);
  int built = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(3, 7);
    const double r1 = gen.uniform(0.5, 2), r2 = r1 * gen.uniform(1.2, 3);
    const double m1 = gen.uniform(0, 0.2) * std::pow(r1, n - 2);
    const double m2 = m1 + gen.uniform(0, 0.2) * std::pow(r1, n - 2);
    const auto H = [n](double m, double r) {
      return (n - 1.0) / r * std::sqrt(1 - 2 * m / std::pow(r, n - 2));
    };
    const Dimension d(n);
    const double w = std::pow(kPi, n / 2.0) * 2 / std::tgamma(n / 2.0);
    CobordismBand b;
    try {
      b = schwarzschild_band(d, w * std::pow(r1, n - 1), H(m1, r1),
                             w * std::pow(r2, n - 1), H(m2, r2));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kConstruction);
      continue;
    }
    REQUIRE(b.feasible());
    ++built;
    CHECK(b.r1 == doctest::Approx(r1).epsilon(1e-12));
    CHECK(b.m2 == doctest::Approx(m2).epsilon(1e-10));
    CHECK(b.min_R >= -1e-10);
    CHECK(slice_geometry(*b.band, b.band->b).H == doctest::Approx(H(m2, r2)).epsilon(1e-8));
  }
  CHECK(built > 20);
}

TEST_CASE("collar bend") {
  const BandMetric g1 = euclidean_band(kThree, 0.5, 1.0);
  const CollarResult same = collar_bend(g1, 2.0);
  CHECK(same.band.radius(0.7) == g1.radius(0.7));
  CHECK(same.boundary_H == 2.0);

  CollarSpec spec;
  spec.shape = Profile::analytic([](double t) { return Jet{-t - 50 * t * t, -1 - 100 * t, -100}; });
  const CollarResult c = collar_bend(g1, 1.0, spec);
  CHECK(c.amplitude == doctest::Approx(0.5));
  CHECK(std::abs(c.boundary_H - 1.0) < 1e-8);
  CHECK(std::abs(slice_geometry(c.band, c.band.b).H - 1.0) < 1e-8);
  CHECK(c.band.radius(c.band.b) == g1.radius(g1.b));
  CHECK(c.min_R_bend > 0);
  CHECK(c.band.radius(0.6) == doctest::Approx(g1.radius(0.6)).epsilon(1e-14));

  const double tau = -0.005, t = 1 + tau;
  const double lam = -tau - 50 * tau * tau, dlam = -1 - 100 * tau;
  CHECK(slice_geometry(c.band, t).H ==
        doctest::Approx(2 / t + 2 * 0.5 * dlam / (1 + 0.5 * lam)).epsilon(1e-8));

  const CollarResult d = collar_bend(g1, 1.0);
  CHECK(std::abs(d.boundary_H - 1.0) < 1e-8);
  CHECK(d.min_R_bend > 0);
  CHECK(d.shape_curvature <= 0);
}

TEST_CASE("collar bend errors") {
  const BandMetric g1 = euclidean_band(kThree, 0.5, 1.0);
  CollarSpec steep;
  steep.shape = Profile::analytic([](double t) { return Jet{-t - 1e5 * t * t, -1 - 2e5 * t, -2e5}; });
  CHECK(kind_of([&] { collar_bend(g1, 1.0, steep); }) == ErrorKind::kConstruction);
  CollarSpec wrong;
  wrong.shape = Profile::analytic([](double t) { return Jet{t, 1, 0}; });
  CHECK(kind_of([&] { collar_bend(g1, 1.0, wrong); }) == ErrorKind::kPrecondition);
  CHECK(kind_of([&] { collar_bend(g1, 3.0); }) == ErrorKind::kPrecondition);
}

TEST_CASE("gluing") {
  const BandMetric s = schwarzschild_metric_band(kThree, 0, 1, 2);
  const CorneredMetric self = glue_with_corner(euclidean_band(kThree, 0.5, 1), s);
  CHECK(self.jump() == doctest::Approx(0).scale(1));
  CHECK(self.admissible());

  const double rs = std::sinh(1.0);
  const CorneredMetric h = glue_with_corner(
      hyperbolic_band(kThree, 1, 0.2, 1),
      schwarzschild_metric_band(kThree, -rs * rs * rs / 2, rs, rs + 1));
  CHECK(std::abs(h.jump()) < 1e-12);

  const CorneredMetric bad = glue_with_corner(
      euclidean_band(kThree, 0.5, 1), schwarzschild_metric_band(kThree, -0.5, 1, 2));
  CHECK(!bad.admissible());
  CHECK(bad.jump() < 0);
  CHECK(kind_of([&] { mollify_corner(bad, 0.1); }) == ErrorKind::kPrecondition);

  CHECK(kind_of([] {
          glue_with_corner(euclidean_band(kThree, 0.5, 1), euclidean_band(kThree, 1.001, 2));
        }) == ErrorKind::kPrecondition);
}

TEST_CASE("mollifier kernel") {
  CHECK(mollifier_kernel(0.2) == 1);
  CHECK(mollifier_kernel(0.7) == 0);
  CHECK(mollifier_kernel(-0.5) == mollifier_kernel(0.5));
  const int N = 20000;
  double sum = 0;
  for (int i = 0; i < N; ++i) sum += mollifier_kernel(-1 + (i + 0.5) * 2.0 / N);
  CHECK(sum * 2.0 / N == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("equal-H corner mollification stays bounded") {
  const double rs = std::sinh(1.0);
  const CorneredMetric c = glue_with_corner(
      hyperbolic_band(kThree, 1, 0.2, 1),
      schwarzschild_metric_band(kThree, -rs * rs * rs / 2, rs, rs + 1));
  std::vector<double> sup, neg;
  for (double delta : {0.1, 0.05, 0.025}) {
    const MollifyResult m = mollify_corner(c, delta);
    sup.push_back(std::max(m.sup_R_collar, m.sup_R_outside));
    neg.push_back(m.negative_part);
    CHECK(m.epsilon == doctest::Approx(delta * delta / 100));
  }
  const auto [lo, hi] = std::minmax_element(sup.begin(), sup.end());
  CHECK((*hi - *lo) / *hi < 0.1);
  CHECK(neg[1] < neg[0]);
  CHECK(neg[2] < neg[1]);
}

TEST_CASE("jump corner carries the distributional curvature") {
  const CorneredMetric c = glue_with_corner(euclidean_band(kThree, 0.5, 1),
                                            schwarzschild_metric_band(kThree, 0.1, 1, 2));
  CHECK(c.jump() > 0);
  for (double delta : {0.1, 0.05}) {
    const MollifyResult m = mollify_corner(c, delta);
    CHECK(m.jump_mass == doctest::Approx(2 * c.jump() * 4 * kPi));
    CHECK(std::abs(m.excess_curvature() / m.jump_mass - 1) < 0.05);
  }
}

TEST_CASE("splitting a smooth band leaves it unchanged") {
  const BandMetric s = schwarzschild_metric_band(kThree, 0.2, 1, 3);
  const CorneredMetric c = glue_with_corner(schwarzschild_metric_band(kThree, 0.2, 1, 2),
                                            schwarzschild_metric_band(kThree, 0.2, 2, 3));
  CHECK(std::abs(c.jump()) < 1e-12);
  const MollifyResult m = mollify_corner(c, 0.1);
  // Compare slice radius against proper distance from r = 2.
  const ArclengthMap dist(s, 2.0);
  double err = 0;
  for (double sgn : {-0.3, -0.05, 0.0, 0.02, 0.4}) {
    err = std::max(err, std::abs(m.band.radius(sgn) - s.radius(dist.t_of_s(sgn))));
  }
  CHECK(err < 1e-7);
  CHECK(m.sup_R_collar < 1e-6);
}

TEST_CASE("conformal solve") {
  const BandMetric ann = euclidean_band(kThree, 1, 2);
  const ConformalResult id = conformal_solve(ann, Profile::constant(0), ConformalMode::kCompactBVP);
  CHECK((id.factor.values().array() - 1).abs().maxCoeff() < 1e-14);
  CHECK(id.H_tilde_upper == doctest::Approx(id.H_upper).epsilon(1e-12));

  ConformalOptions o;
  o.smallness_bound = 0.1;
  const ConformalResult r =
      conformal_solve(ann, Profile::constant(-0.01), ConformalMode::kCompactBVP, o);
  CHECK(r.factor.values().minCoeff() >= 1);
  CHECK(r.factor.values().maxCoeff() > 1);
  CHECK(r.H_tilde_upper <= r.H_upper);
  CHECK(r.outward_slope_upper <= 0);
  CHECK(r.outward_slope_lower <= 0);
  CHECK(kind_of([&] {
          conformal_solve(ann, Profile::constant(-0.01), ConformalMode::kCompactBVP);
        }) == ErrorKind::kPrecondition);
}

TEST_CASE("conformal solve agrees with a brute-force tridiagonal solve") {
  const BandMetric ann = euclidean_band(kThree, 1, 2, 200);
  const auto h = [](double r) { return -0.05 * (1 + 0.5 * std::sin(3 * r)); };
  ConformalOptions o;
  o.smallness_bound = 1;
  const ConformalResult r = conformal_solve(
      ann, Profile::analytic([&](double t) { return Jet{h(t), 0, 0}; }),
      ConformalMode::kCompactBVP, o);
  const Eigen::VectorXd oracle = thomas_flat(3, 1, 2, 2000, h);
  double err = 0;
  for (Eigen::Index i = 0; i <= 200; ++i) {
    err = std::max(err, std::abs(r.factor.values()(i) - oracle(10 * i)));
  }
  CHECK(err < 1e-6);
}

TEST_CASE("property: maximum principle on random admissible inputs") {
  Gen gen(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(3, 7);
    const double a = gen.uniform(0.5, 2), b = a + gen.uniform(0.5, 2);
    const double amp = gen.log_uniform(1e-4, 1e-2), k = gen.uniform(0, 5);
    const BandMetric g = trial % 2 ? euclidean_band(Dimension(n), a, b, 400)
                                   : schwarzschild_metric_band(Dimension(n), 0.1 * std::pow(a, n - 2), a, b, 400);
    ConformalOptions o;
    o.smallness_bound = 1;
    const ConformalResult r = conformal_solve(
        g, Profile::analytic([&](double t) { return Jet{-amp * (1 + 0.9 * std::sin(k * t)), 0, 0}; }),
        ConformalMode::kCompactBVP, o);
    CHECK_MESSAGE(r.factor.values().minCoeff() >= 1, (r.factor.values().array() - 1).minCoeff());
    CHECK(r.H_tilde_upper <= r.H_upper);
    CHECK(r.H_tilde_lower >= r.H_lower);  // outward normal is -d/dt there
  }
}

TEST_CASE("conformal solve with decay at infinity") {
  const BandMetric far = euclidean_band(kThree, 1, 200, 4000);
  ConformalOptions o;
  o.smallness_bound = 1;
  const ConformalResult r = conformal_solve(
      far, Profile::analytic([](double t) { return Jet{t < 3 ? -0.01 : 0.0, 0, 0}; }),
      ConformalMode::kDecayAtInfinity, o);
  CHECK(r.factor.values().minCoeff() >= 1);
  // Outside the support w - 1 = A / r.
  const double A = (r.factor(50) - 1) * 50;
  CHECK((r.factor(150) - 1) * 150 == doctest::Approx(A).epsilon(1e-3));
  CHECK(kind_of([&] {
          conformal_solve(hyperbolic_band(kThree, 1, 1, 3), Profile::constant(0),
                          ConformalMode::kDecayAtInfinity);
        }) == ErrorKind::kPrecondition);
}

TEST_CASE("scalar perturbation") {
  const CobordismBand b = feasible_band();
  const BandMetric& g = *b.band;
  const PerturbResult p0 = scalar_perturb(g, {1.2, 1.8}, 0);
  CHECK(p0.margin_upper > 0);
  CHECK(p0.factor.values().maxCoeff() <= 1 + 1e-14);

  const PerturbResult p1 = scalar_perturb(g, {1.2, 1.8}, 1e-4);
  const PerturbResult p2 = scalar_perturb(g, {1.2, 1.8}, 5e-5);
  CHECK(p1.min_R > 0);
  CHECK(p2.min_R > 0);
  CHECK(p1.min_R / p2.min_R == doctest::Approx(2).epsilon(0.05));
  CHECK(p1.band.radius(p1.band.b) == doctest::Approx(g.radius(g.b)).epsilon(1e-12));

  // Engine check on the deformed band away from the ends.
  const SampledFn R = scalar_curvature_band(p1.band);
  for (Eigen::Index i = 50; i < R.size() - 50; i += 50) CHECK(R.values()(i) > 0);

  PerturbOptions strict;
  strict.min_margin = 10;
  CHECK(kind_of([&] { scalar_perturb(g, {1.2, 1.8}, 1e-4, strict); }) == ErrorKind::kConstruction);
  CHECK(kind_of([] { scalar_perturb(euclidean_band(kThree, 1, 2), {1.2, 1.8}, 1e-4); }) ==
        ErrorKind::kPrecondition);
  CHECK(kind_of([&] { scalar_perturb(g, {1.2, 1.8}, -1); }) == ErrorKind::kPrecondition);
}

TEST_CASE("conformal lower bound and smoothing pipeline") {
  const BandMetric hyp = hyperbolic_band(kThree, 1, 0.5, 1.5, 400);
  ConformalOptions o;
  o.smallness_bound = 100;
  const LowerBoundResult lb = conformal_lower_bound(hyp, 3, o);
  CHECK(lb.bound == doctest::Approx(-8.0 * 3));
  CHECK(lb.min_R >= lb.bound - 1e-8);

  const CorneredMetric c = glue_with_corner(euclidean_band(kThree, 0.5, 1),
                                            schwarzschild_metric_band(kThree, 0.1, 1, 2));
  const PipelineResult p = nnsc_smooth_pipeline(c, 0.1, 1e-4);
  CHECK(p.perturbed.min_R > 0);
  CHECK(p.conformal.factor.values().minCoeff() >= 1);
}
