#include "eulerscope/finite_difference.hpp"

#include <algorithm>

#include "eulerscope/error.hpp"

namespace eulerscope {

std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int max_order) {
    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(max_order + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<std::vector<double>> w(max_order + 1, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= max_order; ++k) w[k][i] = c[i][k];
    return w;
}

void fd_derivative_line(std::span<const double> in, std::span<double> out, double h, int order) {
    if (order < 1 || order > 2) throw Error(ErrorKind::UnimplementedOrder, "finite differences support orders 1 and 2");
    const int n = static_cast<int>(in.size());
    const int width = std::min(n, order == 1 ? 7 : 9);
    const int half = width / 2;
    std::vector<double> nodes(width);
    // Weights depend only on the offset of the target inside its window.
    std::vector<std::vector<double>> by_offset(width);
    for (int off = 0; off < width; ++off) {
        for (int i = 0; i < width; ++i) nodes[i] = static_cast<double>(i);
        by_offset[off] = fornberg_weights(static_cast<double>(off), nodes, order)[order];
    }
    const double scale = order == 1 ? 1.0 / h : 1.0 / (h * h);
    for (int p = 0; p < n; ++p) {
        const int start = std::clamp(p - half, 0, n - width);
        const auto& w = by_offset[p - start];
        double acc = 0.0;
        for (int i = 0; i < width; ++i) acc += w[i] * in[start + i];
        out[p] = acc * scale;
    }
}

}  // namespace eulerscope
