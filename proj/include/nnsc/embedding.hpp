#ifndef NNSC_EMBEDDING_HPP_
#define NNSC_EMBEDDING_HPP_

#include "nnsc/bartnik_data.hpp"
#include "nnsc/sampled_fn.hpp"

namespace nnsc {

// Gauss curvature K = -(h'/f)'/(f h) of f^2 dtheta^2 + h^2 dphi^2 on the data
// grid. Pole values are one-sided limits (cubic extrapolation from the four
// nearest interior nodes).
SampledFn gauss_curvature(const AxisymBartnikData& d);

// Mean curvature H0(theta) of the isometric embedding of the data metric into
// R^3 as the surface of revolution with profile rho = h(theta),
// z = int sqrt(f^2 - h'^2). Evaluated as H0 = K h / z_s + z_s / h with
// z_s = sqrt(1 - (h'/f)^2) inside, and by one-sided limits at the poles.
//
// Throws a precondition error if f^2 - h'^2 < 0 somewhere (no embedding as a
// surface of revolution) or if the Gauss curvature is not positive.
SampledFn embed_axisym(const AxisymBartnikData& d);

}  // namespace nnsc

#endif  // NNSC_EMBEDDING_HPP_
