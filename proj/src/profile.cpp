#include "nnsc/profile.hpp"

namespace nnsc {

Profile::Profile() : fn_([](double) { return Jet{}; }) {}

Profile Profile::analytic(JetFn fn) {
  Profile p;
  p.fn_ = std::move(fn);
  return p;
}

Profile Profile::sampled(SampledFn samples) {
  Profile p;
  p.samples_ = std::make_shared<const SampledFn>(std::move(samples));
  return p;
}

Profile Profile::constant(double c) {
  return analytic([c](double) { return Jet{c, 0.0, 0.0}; });
}

Jet Profile::jet(double x) const {
  if (samples_) return samples_->jet(x);
  return fn_(x);
}

}  // namespace nnsc
