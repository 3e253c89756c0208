#pragma once

#include <cstddef>
#include <vector>

namespace iminfer {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes from Newton iteration on the Legendre recurrence.
GaussLegendreRule gauss_legendre(std::size_t order);

}  // namespace iminfer
