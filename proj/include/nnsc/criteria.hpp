#ifndef NNSC_CRITERIA_HPP_
#define NNSC_CRITERIA_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nnsc/band_metric.hpp"
#include "nnsc/bartnik_data.hpp"

namespace nnsc {

enum class Outcome { kNonexistenceCertified, kExistenceConstructed, kInconclusive };

const char* to_string(Outcome outcome);

struct Verdict {
  Outcome outcome = Outcome::kInconclusive;
  std::string theorem;  // "Thm1.1", "Thm1.2", "Thm1.3", "Prop2.12"
  std::vector<std::pair<std::string, double>> audit;
  std::vector<std::string> assumptions;  // cited results relied upon
  std::string note;
  std::optional<BandMetric> construction;

  std::optional<double> value(const std::string& name) const;
  // "NonexistenceCertified Thm1.1", or the bare outcome when no theorem.
  std::string summary() const;
};

// Certified iff m_BY(d2) < 0 <= m_H(d1). Throws on n != 3, H <= 0, or
// non-positive Gauss curvature of d2.
Verdict check_mass_obstruction(const BartnikData& d1, const BartnikData& d2);

struct ThresholdResult {
  double Lambda = 0.0;
  Verdict verdict;
};

// Round d2 only. Lambda = omega_2 r2^2 H0 sqrt(1 + kappa^2 r2^2) + 1 with
// H0 = 2 sqrt(1 + kappa^2 r2^2)/r2 and kappa = max(kappa1, sqrt(C/6),
// sqrt(K_-)). Certified iff int H2 > Lambda.
ThresholdResult total_mean_curvature_bound(const RoundBartnikData& d1,
                                           const BartnikData& d2, double C = 0.0);

// Lambda = H0 + 1 after scaling to kappa = 1; when H2 >= Lambda the
// hyperbolic quasi-spherical extension is built and its mass aspect checked.
ThresholdResult hyperbolic_threshold_check(const RoundBartnikData& d1,
                                           const RoundBartnikData& d2,
                                           double C = 0.0);

// ExistenceConstructed with the Schwarzschild band when V1 < V2 and
// m1 <= m2; Inconclusive otherwise.
Verdict construct_existence(const RoundBartnikData& d1, const RoundBartnikData& d2);

}  // namespace nnsc

#endif  // NNSC_CRITERIA_HPP_
