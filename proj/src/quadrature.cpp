#include "iminfer/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "iminfer/error.hpp"

namespace iminfer {

GaussLegendreRule gauss_legendre(std::size_t order) {
  if (order == 0) throw Error(ErrorKind::InvalidArgument, "quadrature order must be positive");
  GaussLegendreRule rule{std::vector<double>(order), std::vector<double>(order)};
  const std::size_t half = (order + 1) / 2;
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        const double jd = static_cast<double>(j);
        p0 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p2) / jd;
      }
      derivative = n * (x * p0 - p1) / (x * x - 1.0);
      const double step = p0 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

}  // namespace iminfer
