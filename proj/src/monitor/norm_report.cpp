#include <cmath>

#include "eulerscope/error.hpp"
#include "eulerscope/identities.hpp"
#include "eulerscope/monitor.hpp"
#include "eulerscope/norms.hpp"

namespace eulerscope {

DirectionGradient direction_gradient(const VectorField& omega, double eps_dir) {
    const Grid3& g = omega.grid();
    std::vector<double> mag(g.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        mag[i] = norm(omega.at(i));
        peak = std::max(peak, mag[i]);
    }
    if (peak == 0.0) throw Error(ErrorKind::DegenerateDirection, "vorticity vanishes: direction field undefined");
    const Jacobian dw = jacobian(omega);
    const double floor = eps_dir * peak;
    DirectionGradient out;
    std::size_t masked = 0;
    for (std::size_t n = 0; n < g.size(); ++n) {
        if (mag[n] < floor) continue;
        ++masked;
        const Vec3 w = omega.at(n);
        const double r = mag[n];
        for (int j = 0; j < 3; ++j) {
            const Vec3 dj{dw(0, j)[n], dw(1, j)[n], dw(2, j)[n]};
            const double wd = dot(w, dj);
            for (int i = 0; i < 3; ++i)
                out.linf = std::max(out.linf, std::abs(dj[i] / r - w[i] * wd / (r * r * r)));
        }
    }
    out.mask_fraction = static_cast<double>(masked) / static_cast<double>(g.size());
    return out;
}

NormReport record(const VectorField& u, double time, const MonitorOptions& options) {
    const Grid3& g = u.grid();
    if (!g.domain().is_flat()) throw Error(ErrorKind::UnsupportedKind, "the monitor works on flat grids");
    if (options.triplet) {
        const auto v = validate_triplet(*options.triplet, g.domain());
        if (!v.pass()) throw Error(ErrorKind::Config, "triplet rejected: " + v.failures.front());
    }

    NormReport r;
    r.time = time;
    const ConormalSet set = conormal_derivatives(u, 2);
    const Jacobian j = jacobian(u);
    const VectorField w = curl(j);

    r.linf_u = u.max_abs();
    r.linf_omega = w.max_abs();
    r.linf_grad_h_u = linf_grad_h(j);
    r.linf_grad_u = linf_grad(j);
    r.w1inf_tan = sobolev_norm(set, true, 1, kInfinity);
    r.w1inf_co = sobolev_norm(set, false, 1, kInfinity);
    r.w2inf_co = sobolev_norm(set, false, 2, kInfinity);

    const auto q = g.quadrature_weights();
    for (std::size_t n = 0; n < g.size(); ++n) {
        const Vec3 uu = u.at(n);
        const Vec3 ww = w.at(n);
        r.energy += 0.5 * q[n] * dot(uu, uu);
        r.enstrophy += 0.5 * q[n] * dot(ww, ww);
        r.helicity += q[n] * dot(uu, ww);
    }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double m = 0.0;
            for (std::size_t n = 0; n < g.size(); ++n) m = std::max(m, std::abs(j(a, b)[n] + j(b, a)[n]));
            r.deformation += m;
        }

    try {
        const DirectionGradient d = direction_gradient(w, options.eps_dir);
        r.cfm = (1.0 + r.linf_u) * d.linf;
        r.cfm_mask_fraction = d.mask_fraction;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateDirection) throw;
    }

    if (options.triplet) {
        const CompatibleTriplet& t = *options.triplet;
        const auto dims = g.dims();
        const std::size_t plane = dims[0] * dims[1];
        Mask m1(g.size());
        Mask m2(g.size());
        std::vector<double> chi(dims[2]);
        std::vector<double> chi_dz(dims[2]);
        for (std::size_t k = 0; k < dims[2]; ++k) {
            const Vec3 x = g.point(0, 0, k);
            chi[k] = t.chi(x);
            chi_dz[k] = t.chi_dz(x);
            const bool in1 = t.omega1.contains_node(g.domain(), x[2]);
            const bool in2 = t.omega2.contains_node(g.domain(), x[2]);
            for (std::size_t p = 0; p < plane; ++p) {
                m1[k * plane + p] = in1;
                m2[k * plane + p] = in2;
            }
        }
        RegionalNorms reg;
        reg.w1inf_co_omega1 = sobolev_norm(set, false, 1, kInfinity, &m1);
        reg.linf_omega_omega2 = lp_norm(w, kInfinity, &m2);
        for (std::size_t n = 0; n < g.size(); ++n) {
            const std::size_t k = n / plane;
            const double wmax = std::max({std::abs(w[0][n]), std::abs(w[1][n]), std::abs(w[2][n])});
            reg.linf_chi_omega = std::max(reg.linf_chi_omega, std::abs(chi[k]) * wmax);
            if (!m1[n]) continue;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 2; ++b)
                    reg.linf_grad_h_u_omega1 = std::max(reg.linf_grad_h_u_omega1, std::abs(j(a, b)[n]));
            reg.cutoff_advection = std::max(reg.cutoff_advection, std::abs(u[2][n] * chi_dz[k]) * wmax);
        }
        r.regional = reg;
    }
    return r;
}

}  // namespace eulerscope
