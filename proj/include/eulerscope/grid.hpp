#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "eulerscope/domain.hpp"

namespace eulerscope {

/// How derivatives are taken along an axis.
///   Periodic    n uniform nodes on [lo, lo + length), Fourier.
///   WallParity  n nodes on [lo, lo + length] including both walls; cosine or
///               sine series chosen from the field's parity (free-slip walls).
///   Bounded     n nodes on [lo, lo + length] including both ends; 6th-order
///               finite differences, one-sided near the ends.
enum class AxisKind { Periodic, WallParity, Bounded };

struct Axis {
    AxisKind kind = AxisKind::Periodic;
    std::size_t n = 0;
    double lo = 0.0;
    double length = 1.0;

    double spacing() const { return kind == AxisKind::Periodic ? length / n : length / (n - 1); }
    double coord(std::size_t i) const { return lo + spacing() * static_cast<double>(i); }
    /// Quadrature weight of node i: uniform on periodic axes, trapezoid otherwise.
    double weight(std::size_t i) const;
};

/// Structured tensor-product grid. Node (i, j, k) has linear index
/// i + n0 * (j + n1 * k): x fastest.
class Grid3 {
public:
    Grid3(DomainSpec domain, std::array<Axis, 3> axes);

    /// Fully periodic grid of n^3 nodes on the torus with the given period.
    static Grid3 torus(std::size_t n, double period);
    static Grid3 torus(std::array<std::size_t, 3> dims, std::array<double, 3> periods);
    /// Free-slip channel: nx x ny periodic, nz_nodes wall-to-wall (walls included).
    static Grid3 channel(std::size_t nx, std::size_t ny, std::size_t nz_nodes, double lx, double ly,
                         double height = 1.0);

    const DomainSpec& domain() const { return domain_; }
    const Axis& axis(int a) const { return axes_[a]; }
    std::array<std::size_t, 3> dims() const { return {axes_[0].n, axes_[1].n, axes_[2].n}; }
    std::size_t size() const { return axes_[0].n * axes_[1].n * axes_[2].n; }

    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
        return i + axes_[0].n * (j + axes_[1].n * k);
    }
    Vec3 point(std::size_t i, std::size_t j, std::size_t k) const {
        return {axes_[0].coord(i), axes_[1].coord(j), axes_[2].coord(k)};
    }
    Vec3 point(std::size_t idx) const;

    /// Quadrature weight of every node (product of axis weights).
    std::vector<double> quadrature_weights() const;

    bool operator==(const Grid3& other) const;

private:
    DomainSpec domain_;
    std::array<Axis, 3> axes_;
};

}  // namespace eulerscope
