#include "nnsc/quadrature.hpp"

#include <array>

#include "nnsc/error.hpp"

namespace nnsc {

double simpson(const Eigen::VectorXd& grid, const Eigen::VectorXd& values) {
  const Eigen::Index intervals = grid.size() - 1;
  if (intervals < 2 || intervals % 2 != 0 || values.size() != grid.size()) {
    fail(ErrorKind::kResolution,
         "Simpson rule needs an even number of intervals");
  }
  const double h = (grid(intervals) - grid(0)) / static_cast<double>(intervals);
  double sum = values(0) + values(intervals);
  for (Eigen::Index i = 1; i < intervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * values(i);
  }
  return sum * h / 3.0;
}

double gauss_legendre(const std::function<double(double)>& f, double a,
                      double b, int panels) {
  static constexpr std::array<double, 5> kNodes = {
      0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
      0.8650633666889845, 0.9739065285171717};
  static constexpr std::array<double, 5> kWeights = {
      0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
      0.1494513491505806, 0.0666713443086881};
  if (panels < 1) panels = 1;
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    const double half = 0.5 * width;
    double s = 0.0;
    for (std::size_t k = 0; k < kNodes.size(); ++k) {
      s += kWeights[k] * (f(mid - half * kNodes[k]) + f(mid + half * kNodes[k]));
    }
    total += s * half;
  }
  return total;
}

}  // namespace nnsc
