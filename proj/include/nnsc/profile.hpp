#ifndef NNSC_PROFILE_HPP_
#define NNSC_PROFILE_HPP_

#include <functional>
#include <memory>
#include <optional>

#include "nnsc/sampled_fn.hpp"

namespace nnsc {

// A scalar function of one variable that can report its 2-jet.
//
// Either analytic (closed-form value and derivatives) or backed by samples,
// in which case derivatives come from the cubic spline. Copies share the
// underlying callable or samples.
class Profile {
 public:
  using JetFn = std::function<Jet(double)>;

  Profile();  // the constant 0

  static Profile analytic(JetFn fn);
  static Profile sampled(SampledFn samples);
  static Profile constant(double c);

  Jet jet(double x) const;
  double operator()(double x) const { return jet(x).value; }

  bool is_analytic() const { return !samples_; }
  const SampledFn* samples() const { return samples_.get(); }

 private:
  JetFn fn_;
  std::shared_ptr<const SampledFn> samples_;
};

}  // namespace nnsc

#endif  // NNSC_PROFILE_HPP_
