#pragma once

#include <span>
#include <vector>

namespace eulerscope {

/// Fornberg weights: w[k][i] approximates the k-th derivative at x0 from the
/// values at nodes[i], for k = 0..max_order.
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int max_order);

/// Derivative of a uniformly sampled line with spacing h: 7-node windows
/// (9 for order 2), centred in the interior and shifted inward at the ends.
void fd_derivative_line(std::span<const double> in, std::span<double> out, double h, int order);

}  // namespace eulerscope
