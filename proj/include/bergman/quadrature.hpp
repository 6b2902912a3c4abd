#pragma once

#include <vector>

namespace bergman {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes by Newton iteration on the three-term Legendre recurrence.
/// Exact for polynomials of degree <= 2n - 1.
GaussLegendreRule gauss_legendre(int n);

}  // namespace bergman
