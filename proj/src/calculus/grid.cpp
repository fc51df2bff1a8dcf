#include "eulerscope/grid.hpp"

#include <cmath>
#include <sstream>

#include "eulerscope/error.hpp"

namespace eulerscope {

double Axis::weight(std::size_t i) const {
    const double h = spacing();
    if (kind == AxisKind::Periodic) return h;
    return (i == 0 || i + 1 == n) ? 0.5 * h : h;
}

Grid3::Grid3(DomainSpec domain, std::array<Axis, 3> axes) : domain_(std::move(domain)), axes_(axes) {
    for (int a = 0; a < 3; ++a) {
        const auto& ax = axes_[a];
        const auto& ext = domain_.extent(a);
        std::ostringstream where;
        where << "axis " << a << ": ";
        if (ax.n < 4) throw Error(ErrorKind::UnsupportedGrid, where.str() + "needs at least 4 nodes");
        if (!(ax.length > 0.0)) throw Error(ErrorKind::UnsupportedGrid, where.str() + "needs a positive length");
        switch (ax.kind) {
            case AxisKind::Periodic:
                if (ax.n % 2 != 0) throw Error(ErrorKind::UnsupportedGrid, where.str() + "periodic axes need even n");
                if (ext.periodic && std::abs(ax.length - ext.length()) > 1e-12 * ext.length())
                    throw Error(ErrorKind::UnsupportedGrid, where.str() + "period differs from the domain's");
                if (!ext.periodic && ext.bounded())
                    throw Error(ErrorKind::UnsupportedGrid, where.str() + "bounded domain axis cannot be periodic");
                break;
            case AxisKind::WallParity:
                if (ext.periodic || !ext.bounded() || !domain_.boundary_axes().test(a))
                    throw Error(ErrorKind::UnsupportedGrid, where.str() + "parity transforms need walls on both ends");
                if (std::abs(ax.lo - ext.lo) > 1e-12 || std::abs(ax.lo + ax.length - ext.hi) > 1e-12)
                    throw Error(ErrorKind::UnsupportedGrid, where.str() + "parity axis must span wall to wall");
                break;
            case AxisKind::Bounded:
                if (ext.periodic)
                    throw Error(ErrorKind::UnsupportedGrid, where.str() + "periodic domain axis needs a periodic grid axis");
                if (ax.lo < ext.lo - 1e-12 || ax.lo + ax.length > ext.hi + 1e-12)
                    throw Error(ErrorKind::UnsupportedGrid, where.str() + "grid window leaves the domain");
                break;
        }
    }
}

Grid3 Grid3::torus(std::size_t n, double period) { return torus({n, n, n}, {period, period, period}); }

Grid3 Grid3::torus(std::array<std::size_t, 3> dims, std::array<double, 3> periods) {
    std::array<Axis, 3> axes{};
    for (int a = 0; a < 3; ++a) axes[a] = Axis{AxisKind::Periodic, dims[a], 0.0, periods[a]};
    return Grid3(DomainSpec::torus3(periods[0], periods[1], periods[2]), axes);
}

Grid3 Grid3::channel(std::size_t nx, std::size_t ny, std::size_t nz_nodes, double lx, double ly, double height) {
    return Grid3(DomainSpec::slab_channel_periodic(lx, ly, height),
                 {Axis{AxisKind::Periodic, nx, 0.0, lx}, Axis{AxisKind::Periodic, ny, 0.0, ly},
                  Axis{AxisKind::WallParity, nz_nodes, 0.0, height}});
}

Vec3 Grid3::point(std::size_t idx) const {
    const std::size_t i = idx % axes_[0].n;
    const std::size_t j = (idx / axes_[0].n) % axes_[1].n;
    const std::size_t k = idx / (axes_[0].n * axes_[1].n);
    return point(i, j, k);
}

std::vector<double> Grid3::quadrature_weights() const {
    std::vector<double> w(size());
    for (std::size_t k = 0; k < axes_[2].n; ++k)
        for (std::size_t j = 0; j < axes_[1].n; ++j)
            for (std::size_t i = 0; i < axes_[0].n; ++i)
                w[index(i, j, k)] = axes_[0].weight(i) * axes_[1].weight(j) * axes_[2].weight(k);
    return w;
}

bool Grid3::operator==(const Grid3& other) const {
    if (domain_.kind() != other.domain_.kind()) return false;
    for (int a = 0; a < 3; ++a) {
        const auto& x = axes_[a];
        const auto& y = other.axes_[a];
        if (x.kind != y.kind || x.n != y.n || x.lo != y.lo || x.length != y.length) return false;
    }
    return true;
}

}  // namespace eulerscope
