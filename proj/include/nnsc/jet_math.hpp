#ifndef NNSC_JET_MATH_HPP_
#define NNSC_JET_MATH_HPP_

#include <cmath>

#include "nnsc/sampled_fn.hpp"

// Second-order forward-mode arithmetic on Jet (value, d/dx, d^2/dx^2), used
// to build analytic profiles of composite expressions.
namespace nnsc {

inline Jet variable(double x) { return Jet{x, 1.0, 0.0}; }
inline Jet constant_jet(double c) { return Jet{c, 0.0, 0.0}; }

inline Jet operator+(const Jet& a, const Jet& b) {
  return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}
inline Jet operator-(const Jet& a, const Jet& b) {
  return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2};
}
inline Jet operator-(const Jet& a) { return {-a.value, -a.d1, -a.d2}; }
inline Jet operator*(const Jet& a, const Jet& b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}
inline Jet operator*(double c, const Jet& a) {
  return {c * a.value, c * a.d1, c * a.d2};
}
inline Jet operator*(const Jet& a, double c) { return c * a; }
inline Jet operator+(const Jet& a, double c) {
  return {a.value + c, a.d1, a.d2};
}
inline Jet operator+(double c, const Jet& a) { return a + c; }
inline Jet operator-(const Jet& a, double c) { return a + (-c); }
inline Jet operator-(double c, const Jet& a) { return (-a) + c; }

// Composition g(a) given g, g', g'' at a.value.
inline Jet chain(const Jet& a, double g, double dg, double ddg) {
  return {g, dg * a.d1, ddg * a.d1 * a.d1 + dg * a.d2};
}

inline Jet reciprocal(const Jet& a) {
  const double v = 1.0 / a.value;
  return chain(a, v, -v * v, 2.0 * v * v * v);
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
inline Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }
inline Jet operator/(double c, const Jet& a) { return c * reciprocal(a); }

inline Jet exp(const Jet& a) {
  const double e = std::exp(a.value);
  return chain(a, e, e, e);
}
inline Jet log(const Jet& a) {
  const double v = 1.0 / a.value;
  return chain(a, std::log(a.value), v, -v * v);
}
inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.value);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.value));
}
inline Jet pow(const Jet& a, double p) {
  const double v = std::pow(a.value, p);
  return chain(a, v, p * v / a.value, p * (p - 1.0) * v / (a.value * a.value));
}
inline Jet sin(const Jet& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return chain(a, s, c, -s);
}
inline Jet cos(const Jet& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return chain(a, c, -s, -c);
}
inline Jet sinh(const Jet& a) {
  const double s = std::sinh(a.value), c = std::cosh(a.value);
  return chain(a, s, c, s);
}
inline Jet cosh(const Jet& a) {
  const double s = std::sinh(a.value), c = std::cosh(a.value);
  return chain(a, c, s, c);
}

// C-infinity step: 0 for x <= 0, 1 for x >= 1, e^{-1/x}/(e^{-1/x} +
// e^{-1/(1-x)}) between, with S(x) + S(1 - x) = 1.
inline Jet smooth_step(const Jet& x) {
  constexpr double kFlat = 2e-3;  // S < 1e-216 below kFlat
  if (x.value <= kFlat) return {0.0, 0.0, 0.0};
  if (x.value >= 1.0 - kFlat) return {1.0, 0.0, 0.0};
  const Jet a = exp(-1.0 / x);
  const Jet b = exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

}  // namespace nnsc

#endif  // NNSC_JET_MATH_HPP_
