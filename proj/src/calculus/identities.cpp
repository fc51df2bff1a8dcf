#include "eulerscope/identities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eulerscope/error.hpp"

namespace eulerscope {

namespace {

// Slack for rounding when comparing a grid maximum against a bound built
// from other grid maxima.
bool within(double lhs, double rhs) { return lhs <= rhs + 1e-12 * (1.0 + std::abs(rhs)); }

void require_flat(const Grid3& g) {
    if (!g.domain().is_flat()) throw Error(ErrorKind::UnsupportedKind, "flat identities need a flat domain");
}

}  // namespace

double linf_grad_h(const Jacobian& j) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 2; ++k) m = std::max(m, j(i, k).max_abs());
    return m;
}

double linf_grad(const Jacobian& j) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) m = std::max(m, j(i, k).max_abs());
    return m;
}

double DzIdentityReport::max_residual() const { return std::max({omega3, dz_u1, dz_u2, dz_u3}); }

DzIdentityReport dz_identities(const VectorField& u, const VectorField& omega, double curl_tolerance) {
    require_flat(u.grid());
    if (!(omega.grid() == u.grid())) throw Error(ErrorKind::Inconsistency, "velocity and vorticity grids differ");
    const Jacobian j = jacobian(u);
    const VectorField c = curl(j);

    double mismatch = 0.0;
    for (int k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < u.grid().size(); ++i) mismatch = std::max(mismatch, std::abs(omega[k][i] - c[k][i]));
    const double scale = std::max(1.0, omega.max_abs());
    if (mismatch > curl_tolerance * scale) {
        std::ostringstream os;
        os << "vorticity does not match curl(u): max deviation " << mismatch;
        throw Error(ErrorKind::Inconsistency, os.str());
    }

    DzIdentityReport r;
    for (std::size_t i = 0; i < u.grid().size(); ++i) {
        r.omega3 = std::max(r.omega3, std::abs(omega[2][i] - (j(1, 0)[i] - j(0, 1)[i])));
        r.dz_u1 = std::max(r.dz_u1, std::abs(j(0, 2)[i] - (omega[1][i] + j(2, 0)[i])));
        r.dz_u2 = std::max(r.dz_u2, std::abs(j(1, 2)[i] - (-omega[0][i] + j(2, 1)[i])));
        r.dz_u3 = std::max(r.dz_u3, std::abs(j(2, 2)[i] + j(0, 0)[i] + j(1, 1)[i]));
    }
    r.linf_omega = omega.max_abs();
    r.linf_omega3 = omega[2].max_abs();
    r.linf_grad_h_u = linf_grad_h(j);
    r.linf_dz_u = std::max({j(0, 2).max_abs(), j(1, 2).max_abs(), j(2, 2).max_abs()});
    r.omega3_bound = within(r.linf_omega3, 2.0 * r.linf_grad_h_u);
    r.dz_bound = within(r.linf_dz_u, r.linf_omega + 2.0 * r.linf_grad_h_u);
    return r;
}

FlatStretchSplit vortex_stretch_split_flat(const VectorField& u, const VectorField& omega) {
    require_flat(u.grid());
    if (!(omega.grid() == u.grid())) throw Error(ErrorKind::Inconsistency, "velocity and vorticity grids differ");
    const Grid3& g = u.grid();
    const Jacobian j = jacobian(u);
    FlatStretchSplit s{VectorField(g), VectorField(g), VectorField(g)};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w1 = omega[0][i];
        const double w2 = omega[1][i];
        const double w3 = omega[2][i];
        for (int c = 0; c < 3; ++c) {
            const double h = w1 * j(c, 0)[i] + w2 * j(c, 1)[i];
            const double v = w3 * j(c, 2)[i];
            const double f = w1 * j(c, 0)[i] + w2 * j(c, 1)[i] + w3 * j(c, 2)[i];
            s.horizontal[c][i] = h;
            s.vertical[c][i] = v;
            s.full[c][i] = f;
            s.residual = std::max(s.residual, std::abs(f - h - v));
        }
    }
    s.linf_full = s.full.max_abs();
    s.linf_omega = omega.max_abs();
    s.linf_grad_h_u = linf_grad_h(j);
    s.bound = kStretchC1 * s.linf_omega * s.linf_grad_h_u + kStretchC2 * s.linf_grad_h_u * s.linf_grad_h_u;
    s.bound_holds = within(s.linf_full, s.bound);
    return s;
}

}  // namespace eulerscope
