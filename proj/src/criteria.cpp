#include "nnsc/criteria.hpp"

#include <cmath>
#include <string>

#include "nnsc/constructions.hpp"
#include "nnsc/error.hpp"
#include "nnsc/masses.hpp"
#include "nnsc/quadrature.hpp"
#include "nnsc/quasi_spherical.hpp"

namespace nnsc {

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kNonexistenceCertified: return "NonexistenceCertified";
    case Outcome::kExistenceConstructed: return "ExistenceConstructed";
    case Outcome::kInconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::optional<double> Verdict::value(const std::string& name) const {
  for (const auto& [key, v] : audit) {
    if (key == name) return v;
  }
  return std::nullopt;
}

std::string Verdict::summary() const {
  std::string s = to_string(outcome);
  if (!theorem.empty()) s += " " + theorem;
  return s;
}

namespace {

void require_positive_H(const BartnikData& d, const char* which) {
  bool ok = true;
  if (const auto* r = std::get_if<RoundBartnikData>(&d)) {
    ok = r->H > 0.0;
  } else {
    const auto& a = std::get<AxisymBartnikData>(d);
    for (Eigen::Index i = 0; i < a.grid.size(); ++i) ok = ok && a.H(a.grid(i)) > 0.0;
  }
  if (!ok) {
    fail(ErrorKind::kPrecondition, std::string("mean curvature of ") + which +
                                       " must be positive");
  }
}

// kappa with H = (n-1) sqrt(1 + kappa^2 r^2)/r: the hyperbolic cap of d.
double cap_curvature(const RoundBartnikData& d) {
  const double x = d.H * d.radius / d.n.slice();
  if (!(x > 1.0)) {
    fail(ErrorKind::kPrecondition,
         "no hyperbolic cap: H1 r1 = " + std::to_string(d.H * d.radius) +
             " must exceed n - 1");
  }
  return std::sqrt(x * x - 1.0) / d.radius;
}

}  // namespace

Verdict check_mass_obstruction(const BartnikData& d1, const BartnikData& d2) {
  require_positive_H(d1, "d1");
  require_positive_H(d2, "d2");
  const double m_H = hawking_mass(d1);
  const double m_BY = brown_york_mass(d2);
  Verdict v;
  v.audit = {{"m_H_d1", m_H}, {"m_BY_d2", m_BY}};
  if (m_BY < 0.0 && m_H >= 0.0) {
    v.outcome = Outcome::kNonexistenceCertified;
    v.theorem = "Thm1.1";
    v.audit.emplace_back("margin_m_BY", -m_BY);
    v.audit.emplace_back("margin_m_H", m_H);
    v.assumptions = {"[IH] Hawking mass monotonicity under inverse mean curvature flow",
                     "[ST] positivity of the Brown-York mass"};
  } else {
    v.note = m_BY >= 0.0 ? "m_BY(d2) is not negative" : "m_H(d1) is negative";
  }
  return v;
}

ThresholdResult total_mean_curvature_bound(const RoundBartnikData& d1,
                                           const BartnikData& d2, double C) {
  if (d1.n.value() != 3 || dimension_of(d2) != 3) {
    fail(ErrorKind::kDimension, "total mean curvature bound needs n = 3");
  }
  const auto* round = std::get_if<RoundBartnikData>(&d2);
  if (!round) {
    fail(ErrorKind::kDomain,
         "total mean curvature bound is restricted to round d2 (embedding into "
         "hyperbolic space not available)");
  }
  if (!(C >= 0.0)) fail(ErrorKind::kPrecondition, "C must be nonnegative");
  const double kappa1 = cap_curvature(d1);
  const double r2 = round->radius;
  // Round d2 has Gauss curvature 1/r2^2 > 0, so K_- = 0.
  const double kappa = std::max(kappa1, std::sqrt(C / 6.0));
  const double stretch = std::sqrt(1.0 + kappa * kappa * r2 * r2);
  const double H0 = 2.0 * stretch / r2;
  const double A = unit_sphere_volume(2) * r2 * r2;

  ThresholdResult out;
  out.Lambda = A * H0 * stretch + 1.0;
  const double total = A * round->H;
  Verdict& v = out.verdict;
  v.audit = {{"kappa1", kappa1}, {"kappa", kappa}, {"C", C}, {"H0", H0},
             {"Lambda", out.Lambda}, {"int_H2", total}};
  if (total > out.Lambda) {
    v.outcome = Outcome::kNonexistenceCertified;
    v.theorem = "Thm1.2";
    v.audit.emplace_back("margin_int_H2", total - out.Lambda);
    v.assumptions = {"[ST2] Shi-Tam inequality in hyperbolic space",
                     "smoothing constant C supplied by the user"};
  } else {
    v.note = "int H2 does not exceed Lambda";
  }
  return out;
}

ThresholdResult hyperbolic_threshold_check(const RoundBartnikData& d1,
                                           const RoundBartnikData& d2, double C) {
  if (!(d1.n == d2.n)) fail(ErrorKind::kDimension, "data dimensions differ");
  if (!(d2.H > 0.0)) fail(ErrorKind::kPrecondition, "H2 must be positive");
  if (!(C >= 0.0)) fail(ErrorKind::kPrecondition, "C must be nonnegative");
  const Dimension n = d2.n;
  const int k = n.slice();
  const double kappa1 = cap_curvature(d1);
  const double kappa = std::max(kappa1, std::sqrt(C / (n.value() * k)));

  // Scale lengths by kappa so the background has curvature -1.
  const double r2 = kappa * d2.radius;
  const double H2 = d2.H / kappa;
  const double H0 = k * std::sqrt(1.0 + r2 * r2) / r2;
  const double Lambda = H0 + 1.0;

  ThresholdResult out;
  out.Lambda = kappa * Lambda;
  Verdict& v = out.verdict;
  v.audit = {{"kappa1", kappa1}, {"kappa", kappa}, {"C", C},
             {"H0", kappa * H0}, {"Lambda", out.Lambda}};
  if (!(H2 >= Lambda)) {
    v.note = "H2 below Lambda";
    return out;
  }
  QsProblem p;
  p.background = background::Hyperbolic{1.0};
  p.n = n;
  p.start = std::asinh(r2);
  p.end = 20.0;
  p.u0 = H0 / H2;
  const BandMetric g = qs_hyperbolic_solve(p);
  const MassAspect aspect = hyperbolic_mass_aspect(g);
  v.audit.emplace_back("u0", p.u0);
  v.audit.emplace_back("c0", std::get<tag::HyperbolicQS>(g.tag).c0);
  v.audit.emplace_back("mass_aspect_trace", aspect.trace);
  v.audit.emplace_back("expansion_trace", aspect.expansion_trace);
  if (aspect.trace < 0.0) {
    v.outcome = Outcome::kNonexistenceCertified;
    v.theorem = "Thm1.3";
    v.audit.emplace_back("margin_H2", d2.H - out.Lambda);
    v.assumptions = {"[BQ] smoothing of corners", "[ACG] rigidity of hyperbolic mass",
                     "smoothing constant C supplied by the user"};
  } else {
    v.note = "mass aspect is not negative";
  }
  return out;
}

Verdict construct_existence(const RoundBartnikData& d1, const RoundBartnikData& d2) {
  if (!(d1.n == d2.n)) fail(ErrorKind::kDimension, "data dimensions differ");
  if (!(d1.H > 0.0) || !(d2.H > 0.0)) {
    fail(ErrorKind::kPrecondition, "mean curvatures must be positive");
  }
  const Dimension n = d1.n;
  const double omega = unit_sphere_volume(n.slice());
  const double V1 = omega * std::pow(d1.radius, n.slice());
  const double V2 = omega * std::pow(d2.radius, n.slice());
  Verdict v;
  if (!(d1.radius < d2.radius)) {
    v.note = "hypothesis V₁ < V₂ fails";
    v.audit = {{"V1", V1}, {"V2", V2}};
    return v;
  }
  CobordismBand band = schwarzschild_band(n, V1, d1.H, V2, d2.H);
  v.audit = {{"V1", V1}, {"V2", V2}, {"m1", band.m1}, {"m2", band.m2}};
  if (!band.feasible()) {
    v.note = "hypothesis " + band.violated + " fails";
    return v;
  }
  v.outcome = Outcome::kExistenceConstructed;
  v.theorem = "Prop2.12";
  v.audit.emplace_back("min_R", band.min_R);
  v.construction = std::move(band.band);
  return v;
}

}  // namespace nnsc
