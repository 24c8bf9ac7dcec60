#pragma once

#include <functional>
#include <vector>

namespace hypdelta {

/// Gauss-Legendre rule on [-1, 1]; nodes ascending. Cached per n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss-Chebyshev nodes t_j = cos((2j-1)pi/(2N)), ascending, for
/// integrals against 1/sqrt(1-t^2); the common weight is pi/N.
void gauss_chebyshev(int n, std::vector<double>& nodes);

}  // namespace hypdelta
