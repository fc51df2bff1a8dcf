#include "eulerscope/hardy.hpp"

#include <cmath>
#include <sstream>

#include "eulerscope/derivatives.hpp"
#include "eulerscope/error.hpp"

namespace eulerscope {

HardyReport hardy_quotient(const VectorField& u, const Region* region, double wall_tolerance) {
    const Grid3& g = u.grid();
    const DomainSpec& dom = g.domain();
    if (!dom.is_flat() || !dom.boundary_axes().test(2))
        throw Error(ErrorKind::UnsupportedKind, "the Hardy quotient needs a flat domain with a wall");

    const ScalarField& u3 = u[2];
    const ScalarField dz = derivative(u3, 2);
    const auto d = g.dims();
    const std::size_t plane = d[0] * d[1];

    std::vector<WeightValue> w(d[2]);
    std::vector<bool> wall(d[2]);
    std::vector<bool> inside(d[2]);
    for (std::size_t k = 0; k < d[2]; ++k) {
        const double z = g.axis(2).coord(k);
        w[k] = weight_profile(dom, z, WeightSign::Absolute);
        wall[k] = w[k].phi == 0.0;
        inside[k] = region == nullptr || region->contains_node(dom, z);
    }

    HardyReport r;
    for (std::size_t idx = 0; idx < g.size(); ++idx)
        if (wall[idx / plane]) r.wall_trace = std::max(r.wall_trace, std::abs(u3[idx]));
    if (r.wall_trace > wall_tolerance * std::max(1.0, u3.max_abs())) {
        std::ostringstream os;
        os << "u3 does not vanish on the wall (max trace " << r.wall_trace << ")";
        throw Error(ErrorKind::InadmissibleField, os.str());
    }

    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const std::size_t k = idx / plane;
        if (!inside[k]) continue;
        const double q = wall[k] ? dz[idx] / w[k].dphi : u3[idx] / w[k].phi;
        r.quotient = std::max(r.quotient, std::abs(q));
        r.linf_dz_u3 = std::max(r.linf_dz_u3, std::abs(dz[idx]));
    }
    r.ratio = r.linf_dz_u3 > 0.0 ? r.quotient / r.linf_dz_u3 : 0.0;
    return r;
}

}  // namespace eulerscope
