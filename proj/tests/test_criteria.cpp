#include <chrono>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nnsc/criteria.hpp"
#include "test_support.hpp"

using namespace nnsc;
using nnsc::testing::kind_of;

namespace {

constexpr double kPi = std::numbers::pi;
const Dimension kThree(3);

RoundBartnikData round3(double r, double H) { return make_round(kThree, r, H); }

}  // namespace

TEST_CASE("mass obstruction examples") {
  const Verdict v = check_mass_obstruction(round3(1, 1), round3(1, 3));
  CHECK(v.outcome == Outcome::kNonexistenceCertified);
  CHECK(v.summary() == "NonexistenceCertified Thm1.1");
  CHECK(*v.value("m_H_d1") == doctest::Approx(0.375));
  CHECK(*v.value("m_BY_d2") == doctest::Approx(-0.5));
  CHECK(!v.assumptions.empty());

  CHECK(check_mass_obstruction(round3(1, 1), round3(1, 2)).outcome == Outcome::kInconclusive);
  const Verdict neg = check_mass_obstruction(round3(1, 3), round3(1, 3));
  CHECK(neg.outcome == Outcome::kInconclusive);
  CHECK(*neg.value("m_H_d1") == doctest::Approx(-0.625));
}

TEST_CASE("mass obstruction preconditions") {
  CHECK(kind_of([] { check_mass_obstruction(make_round(Dimension(4), 1, 1), round3(1, 3)); }) ==
        ErrorKind::kDimension);
  CHECK(kind_of([] { check_mass_obstruction(round3(1, 0), round3(1, 3)); }) ==
        ErrorKind::kPrecondition);
}

TEST_CASE("property: mass obstruction is scale invariant") {
  testing::Gen gen(41);
  for (int trial = 0; trial < 40; ++trial) {
    const double r1 = gen.uniform(0.5, 2), H1 = gen.uniform(0.2, 4);
    const double r2 = gen.uniform(0.5, 2), H2 = gen.uniform(0.2, 4);
    const Outcome base = check_mass_obstruction(round3(r1, H1), round3(r2, H2)).outcome;
    for (double lambda : {0.5, 2.0}) {
      const Verdict s = check_mass_obstruction(round3(lambda * r1, H1 / lambda),
                                               round3(lambda * r2, H2 / lambda));
      CHECK(s.outcome == base);
    }
  }
}

TEST_CASE("total mean curvature bound examples") {
  const RoundBartnikData d1 = round3(1, 2 * std::sqrt(2.0));
  const ThresholdResult low = total_mean_curvature_bound(d1, round3(1, 4));
  CHECK(*low.verdict.value("kappa1") == doctest::Approx(1).epsilon(1e-12));
  CHECK(low.Lambda == doctest::Approx(16 * kPi + 1).epsilon(1e-12));
  CHECK(low.verdict.outcome == Outcome::kInconclusive);
  // int H2 = 20 pi already exceeds 16 pi + 1.
  CHECK(total_mean_curvature_bound(d1, round3(1, 5)).verdict.outcome ==
        Outcome::kNonexistenceCertified);

  const ThresholdResult high = total_mean_curvature_bound(d1, round3(1, 10));
  CHECK(high.verdict.summary() == "NonexistenceCertified Thm1.2");
  CHECK(*high.verdict.value("int_H2") == doctest::Approx(40 * kPi));
  CHECK(*high.verdict.value("margin_int_H2") == doctest::Approx(40 * kPi - 16 * kPi - 1));
  CHECK(*high.verdict.value("C") == 0);

  // A large smoothing constant raises kappa and the threshold.
  const ThresholdResult withC = total_mean_curvature_bound(d1, round3(1, 10), 60);
  CHECK(*withC.verdict.value("kappa") == doctest::Approx(std::sqrt(10.0)));
  CHECK(withC.Lambda > high.Lambda);
}

TEST_CASE("total mean curvature bound errors") {
  CHECK(kind_of([] { total_mean_curvature_bound(round3(1, 2), round3(1, 10)); }) ==
        ErrorKind::kPrecondition);
  CHECK(kind_of([] {
          total_mean_curvature_bound(round3(1, 3), round_axisym(1, Profile::constant(10)));
        }) == ErrorKind::kDomain);
}

TEST_CASE("hyperbolic threshold examples") {
  const RoundBartnikData d1 = round3(1, 2 * std::sqrt(2.0));
  const ThresholdResult high = hyperbolic_threshold_check(d1, round3(1, 10));
  CHECK(high.Lambda == doctest::Approx(2 * std::sqrt(2.0) + 1).epsilon(1e-12));
  CHECK(high.verdict.summary() == "NonexistenceCertified Thm1.3");
  CHECK(*high.verdict.value("u0") == doctest::Approx(2 * std::sqrt(2.0) / 10).epsilon(1e-12));
  CHECK(*high.verdict.value("mass_aspect_trace") < 0);
  CHECK(high.verdict.assumptions.size() >= 2);

  const ThresholdResult low = hyperbolic_threshold_check(d1, round3(1, 1));
  CHECK(low.verdict.outcome == Outcome::kInconclusive);
  CHECK(!low.verdict.value("mass_aspect_trace"));
}

TEST_CASE("property: hyperbolic threshold is monotone in H2") {
  const RoundBartnikData d1 = round3(1, 2 * std::sqrt(2.0));
  bool certified = false;
  double prev_trace = 0;
  for (double H2 = 1; H2 <= 20; H2 += 1) {
    const ThresholdResult t = hyperbolic_threshold_check(d1, round3(1, H2));
    const bool now = t.verdict.outcome == Outcome::kNonexistenceCertified;
    CHECK((!certified || now));
    if (now) {
      const double trace = *t.verdict.value("mass_aspect_trace");
      CHECK(trace < 0);
      CHECK(trace < prev_trace);  // c0 shrinks as u0 does
      prev_trace = trace;
    }
    certified = now;
  }
  CHECK(certified);
}

TEST_CASE("existence examples") {
  const Verdict flat = construct_existence(round3(1, 2), round3(2, 1));
  CHECK(flat.outcome == Outcome::kExistenceConstructed);
  CHECK(flat.theorem == "Prop2.12");
  CHECK(flat.construction);

  const Verdict sb = construct_existence(round3(1, 2 * std::sqrt(0.8)),
                                         round3(2, std::sqrt(0.7)));
  CHECK(sb.outcome == Outcome::kExistenceConstructed);
  CHECK(*sb.value("min_R") >= -1e-10);
  CHECK(*sb.value("m2") == doctest::Approx(0.3));

  const Verdict shrink = construct_existence(round3(2, 1), round3(1, 2));
  CHECK(shrink.outcome == Outcome::kInconclusive);
  CHECK(shrink.note.find("V₁ < V₂") != std::string::npos);
}

TEST_CASE("soundness exclusivity over a parameter grid") {
  const auto t0 = std::chrono::steady_clock::now();
  int points = 0, certified = 0, constructed = 0;
  for (double r1 : {0.5, 1.0}) {
    for (double H1 : {1.0, 2.5, 3.5, 5.0, 7.0}) {
      for (double r2 : {0.8, 1.5}) {
        for (double H2 : {0.5, 1.5, 2.5, 6.0, 12.0}) {
          ++points;
          const RoundBartnikData d1 = round3(r1, H1), d2 = round3(r2, H2);
          bool nonexistence = false;
          const auto note = [&](const Verdict& v) {
            nonexistence |= v.outcome == Outcome::kNonexistenceCertified;
            CHECK(v.outcome != Outcome::kExistenceConstructed);
          };
          note(check_mass_obstruction(d1, d2));
          try {
            note(total_mean_curvature_bound(d1, d2).verdict);
          } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::kPrecondition);
          }
          try {
            note(hyperbolic_threshold_check(d1, d2).verdict);
          } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::kPrecondition);
          }
          const Verdict ex = construct_existence(d1, d2);
          CHECK(ex.outcome != Outcome::kNonexistenceCertified);
          const bool exists = ex.outcome == Outcome::kExistenceConstructed;
          CHECK_MESSAGE(!(exists && nonexistence),
                        "r1=" << r1 << " H1=" << H1 << " r2=" << r2 << " H2=" << H2);
          certified += nonexistence;
          constructed += exists;
        }
      }
    }
  }
  CHECK(points == 100);
  CHECK(certified > 0);
  CHECK(constructed > 0);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 60);
}
