#include "eulerscope/chart_calculus.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "eulerscope/error.hpp"

namespace eulerscope {

namespace {

constexpr double kFrameTolerance = 1e-10;

Mat3 jacobian_at(const Jacobian& j, std::size_t idx) {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) m[i][k] = j(i, k)[idx];
    return m;
}

void check_frame(const Mat3& g, const Vec3& x) {
    const Mat3 gtg = matmul(transpose(g), g);
    double dev = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) dev = std::max(dev, std::abs(gtg[i][k] - (i == k ? 1.0 : 0.0)));
    if (dev > kFrameTolerance) {
        std::ostringstream os;
        os << "chart frame is not orthonormal at (" << x[0] << ", " << x[1] << ", " << x[2] << "): deviation " << dev;
        throw Error(ErrorKind::Conditioning, os.str());
    }
}

void check_curl(const Jacobian& j, const VectorField& omega) {
    const VectorField c = curl(j);
    double dev = 0.0;
    for (int k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < omega.grid().size(); ++i) dev = std::max(dev, std::abs(omega[k][i] - c[k][i]));
    if (dev > 1e-8 * std::max(1.0, omega.max_abs()))
        throw Error(ErrorKind::Inconsistency, "vorticity does not match curl(u) on the chart grid");
}

double vmax(const Vec3& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

// Per-node frame quantities shared by the reconstruction and the split.
struct NodeFrame {
    Mat3 g;
    std::array<Mat3, 3> dg;   // dg[k][i][j] = d_k g_ij
    std::array<Vec3, 3> col;  // tau, tau_bar, n
    std::array<Vec3, 3> dn_col;  // d_n of each column
    Vec3 upsi;                // u_m^psi
    std::array<Vec3, 2> du;   // d_tau u, d_taubar u (ambient components)
    Vec3 f;                   // sum_m (d_n g_m) u_m^psi
    Vec3 rec_psi;             // reconstructed d_n u_m^psi
    Vec3 rec_dn_u;            // reconstructed d_n u (ambient)
};

NodeFrame evaluate(const Chart& chart, const Vec3& x, const Vec3& u, const Vec3& w, const Mat3& jac) {
    NodeFrame nf;
    nf.g = chart.frame(x);
    check_frame(nf.g, x);
    nf.dg = chart.frame_gradient(x);
    for (int m = 0; m < 3; ++m) nf.col[m] = column(nf.g, m);
    const Vec3& n = nf.col[2];
    for (int m = 0; m < 3; ++m) {
        Vec3 d{};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) d[i] += n[k] * nf.dg[k][i][m];
        nf.dn_col[m] = d;
        nf.upsi[m] = dot(nf.col[m], u);
    }
    for (int b = 0; b < 2; ++b) nf.du[b] = matvec(jac, nf.col[b]);
    nf.f = Vec3{0.0, 0.0, 0.0};
    for (int m = 0; m < 3; ++m) nf.f = nf.f + nf.upsi[m] * nf.dn_col[m];

    Vec3 l = cross(n, nf.f);
    for (int b = 0; b < 2; ++b) l = l + cross(nf.col[b], nf.du[b]);
    const Vec3 wl = w - l;
    nf.rec_psi[0] = dot(wl, nf.col[1]);
    nf.rec_psi[1] = -dot(wl, nf.col[0]);

    double col_div = 0.0;  // sum_{i,k} d_i g_ik u_k^psi
    for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i) s += nf.dg[i][i][k];
        col_div += s * nf.upsi[k];
    }
    double tan_div = 0.0;  // d_a^psi u_a^psi for a = 1, 2
    for (int a = 0; a < 2; ++a) {
        for (int l2 = 0; l2 < 3; ++l2) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += nf.dg[l2][k][a] * u[k] + nf.g[k][a] * jac[k][l2];
            tan_div += nf.g[l2][a] * s;
        }
    }
    nf.rec_psi[2] = -col_div - tan_div;
    nf.rec_dn_u = nf.f;
    for (int m = 0; m < 3; ++m) nf.rec_dn_u = nf.rec_dn_u + nf.rec_psi[m] * nf.col[m];
    return nf;
}

// d_n u_m^psi from a given Jacobian.
Vec3 direct_psi(const NodeFrame& nf, const Vec3& u, const Mat3& jac) {
    const Vec3& n = nf.col[2];
    Vec3 out{};
    for (int m = 0; m < 3; ++m) {
        double s = 0.0;
        for (int l = 0; l < 3; ++l) {
            double t = 0.0;
            for (int k = 0; k < 3; ++k) t += nf.dg[l][k][m] * u[k] + nf.g[k][m] * jac[k][l];
            s += n[l] * t;
        }
        out[m] = s;
    }
    return out;
}

void require_ball(const Grid3& g) {
    if (g.domain().kind() != DomainKind::Ball)
        throw Error(ErrorKind::Context, "chart calculus needs a grid on the ball");
}

}  // namespace

NormalReconstruction normal_reconstruction(const Chart& chart, const VectorField& u, const VectorField& omega,
                                           const JacobianFn& exact) {
    const Grid3& grid = u.grid();
    require_ball(grid);
    const Jacobian j = jacobian(u);
    check_curl(j, omega);

    NormalReconstruction r;
    double u_max = 0.0;
    double d0 = 0.0;
    double d1 = 0.0;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const Vec3 x = grid.point(idx);
        if (!chart.contains(x)) continue;
        ++r.nodes;
        const Vec3 uu = u.at(idx);
        const Vec3 w = omega.at(idx);
        const Mat3 jac = jacobian_at(j, idx);
        const NodeFrame nf = evaluate(chart, x, uu, w, jac);
        const Mat3 ref = exact ? exact(x) : jac;
        const Vec3 d = direct_psi(nf, uu, ref);
        r.error_tau = std::max(r.error_tau, std::abs(nf.rec_psi[0] - d[0]));
        r.error_tau_bar = std::max(r.error_tau_bar, std::abs(nf.rec_psi[1] - d[1]));
        r.error_normal = std::max(r.error_normal, std::abs(nf.rec_psi[2] - d[2]));
        r.linf_dn_u = std::max(r.linf_dn_u, vmax(matvec(ref, nf.col[2])));
        r.linf_omega = std::max(r.linf_omega, vmax(w));
        u_max = std::max(u_max, vmax(uu));
        d0 = std::max(d0, vmax(nf.du[0]));
        d1 = std::max(d1, vmax(nf.du[1]));
    }
    if (r.nodes == 0) throw Error(ErrorKind::Context, "the chart contains no grid node");
    // W^{1,inf}_tan over the cap: ||u|| + ||d_tau u|| + ||d_taubar u||.
    r.w1inf_tan = u_max + d0 + d1;
    const double denom = r.linf_omega + r.w1inf_tan;
    r.lemma_ratio = denom > 0.0 ? r.linf_dn_u / denom : 0.0;
    return r;
}

CurvedStretchSplit vortex_stretch_split_chart(const Chart& chart, const VectorField& u, const VectorField& omega) {
    const Grid3& grid = u.grid();
    require_ball(grid);
    const Jacobian j = jacobian(u);
    check_curl(j, omega);

    CurvedStretchSplit s;
    double u_max = 0.0;
    double d0 = 0.0;
    double d1 = 0.0;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const Vec3 x = grid.point(idx);
        if (!chart.contains(x)) continue;
        ++s.nodes;
        const Vec3 uu = u.at(idx);
        const Vec3 w = omega.at(idx);
        const Mat3 jac = jacobian_at(j, idx);
        const NodeFrame nf = evaluate(chart, x, uu, w, jac);
        const Vec3& n = nf.col[2];

        const Vec3 full = matvec(jac, w);
        Vec3 a{};
        for (int al = 0; al < 2; ++al)
            for (int m = 0; m < 2; ++m)
                a = a + (dot(cross(n, nf.col[m]), nf.col[al]) * nf.rec_psi[m]) * nf.du[al];
        double wn = 0.0;
        for (int b = 0; b < 2; ++b) wn += dot(cross(nf.col[b], nf.du[b]), n);
        const Vec3 bterm = wn * nf.rec_dn_u;
        Vec3 lbar{};
        for (int al = 0; al < 2; ++al) {
            double c = dot(cross(n, nf.f), nf.col[al]);
            for (int b = 0; b < 2; ++b) c += dot(cross(nf.col[b], nf.du[b]), nf.col[al]);
            lbar = lbar + c * nf.du[al];
        }
        s.linf_full = std::max(s.linf_full, vmax(full));
        s.linf_a = std::max(s.linf_a, vmax(a));
        s.linf_b = std::max(s.linf_b, vmax(bterm));
        s.linf_lbar = std::max(s.linf_lbar, vmax(lbar));
        s.residual = std::max(s.residual, vmax(full - a - bterm - lbar));
        s.linf_omega = std::max(s.linf_omega, vmax(w));
        u_max = std::max(u_max, vmax(uu));
        d0 = std::max(d0, vmax(nf.du[0]));
        d1 = std::max(d1, vmax(nf.du[1]));
    }
    if (s.nodes == 0) throw Error(ErrorKind::Context, "the chart contains no grid node");
    s.w1inf_tan = u_max + d0 + d1;
    const double t2 = s.w1inf_tan * s.w1inf_tan;
    const double denom = s.linf_omega * s.w1inf_tan + t2;
    s.stretch_ratio = denom > 0.0 ? s.linf_full / denom : 0.0;
    s.lbar_ratio = t2 > 0.0 ? s.linf_lbar / t2 : 0.0;
    return s;
}

StretchSplit vortex_stretch_split(const VectorField& u, const VectorField& omega, const Chart* chart) {
    StretchSplit out;
    if (u.grid().domain().is_flat()) {
        if (chart != nullptr) throw Error(ErrorKind::Context, "a chart was supplied for a flat domain");
        out.flat = vortex_stretch_split_flat(u, omega);
        out.residual = out.flat->residual;
        out.linf_full = out.flat->linf_full;
    } else {
        if (chart == nullptr) throw Error(ErrorKind::Context, "curved split needs a chart");
        out.curved = vortex_stretch_split_chart(*chart, u, omega);
        out.residual = out.curved->residual;
        out.linf_full = out.curved->linf_full;
    }
    return out;
}

namespace {

double ball_norm(const Atlas& atlas, const VectorField& u, int m, double p, bool tangential_only) {
    require_ball(u.grid());
    if (m < 0) throw Error(ErrorKind::Parameter, "Sobolev order must be nonnegative");
    if (m > 2) throw Error(ErrorKind::UnimplementedOrder, "Sobolev orders above 2 are not implemented");
    if (!(p >= 1.0)) throw Error(ErrorKind::Parameter, "Lebesgue exponent must be >= 1");
    const Grid3& grid = u.grid();
    const std::size_t n = grid.size();
    const auto qw = grid.quadrature_weights();
    const bool inf = std::isinf(p);

    // d[c][l] = d_l u_c, h[c][l][k] = d_l d_k u_c (k >= l filled, mirrored).
    std::array<std::array<ScalarField, 3>, 3> d{{{u[0], u[0], u[0]}, {u[1], u[1], u[1]}, {u[2], u[2], u[2]}}};
    std::array<std::array<std::array<const ScalarField*, 3>, 3>, 3> h{};
    std::deque<ScalarField> hstore;
    if (m >= 1)
        for (int c = 0; c < 3; ++c)
            for (int l = 0; l < 3; ++l) d[c][l] = derivative(u[c], l);
    if (m >= 2) {
        for (int c = 0; c < 3; ++c)
            for (int l = 0; l < 3; ++l)
                for (int k = l; k < 3; ++k) {
                    hstore.push_back(l == k ? derivative(u[c], l, 2) : derivative(d[c][k], l));
                    h[c][l][k] = &hstore.back();
                    h[c][k][l] = &hstore.back();
                }
    }

    // Accumulates a per-node vector quantity into one L^p (or L^inf) norm.
    struct Acc {
        bool inf;
        double p;
        double v = 0.0;
        void add(const Vec3& val, double w) {
            for (double c : val) {
                if (inf)
                    v = std::max(v, std::abs(c));
                else
                    v += w * std::pow(std::abs(c), p);
            }
        }
        double result() const { return inf ? v : std::pow(v, 1.0 / p); }
    };

    auto in_ball = [](const Vec3& x) { return norm(x) <= 1.0 + 1e-12; };

    // Interior patch: full Cartesian W^{m,p}.
    std::vector<Acc> u0;
    for (int t = 0; t < 10; ++t) u0.push_back(Acc{inf, p});
    for (std::size_t idx = 0; idx < n; ++idx) {
        const Vec3 x = grid.point(idx);
        if (!in_ball(x) || !atlas.in_interior_patch(x)) continue;
        int t = 0;
        u0[t++].add(u.at(idx), qw[idx]);
        if (m >= 1)
            for (int l = 0; l < 3; ++l) u0[t++].add({d[0][l][idx], d[1][l][idx], d[2][l][idx]}, qw[idx]);
        if (m >= 2)
            for (int l = 0; l < 3; ++l)
                for (int k = l; k < 3; ++k)
                    u0[t++].add({(*h[0][l][k])[idx], (*h[1][l][k])[idx], (*h[2][l][k])[idx]}, qw[idx]);
    }
    const int u0_terms = m == 0 ? 1 : (m == 1 ? 4 : 10);
    double interior = 0.0;
    for (int t = 0; t < u0_terms; ++t) {
        const double r = u0[t].result();
        interior += inf ? r : std::pow(r, p);
    }
    if (!inf) interior = std::pow(interior, 1.0 / p);

    // Caps: multi-indices (a1, a2, a3) with |alpha| <= m, applied as Z1^a1 Z2^a2 Z3^a3.
    std::vector<MultiIndex> alphas;
    for (int a3 = 0; a3 <= m; ++a3)
        for (int a2 = 0; a2 + a3 <= m; ++a2)
            for (int a1 = 0; a1 + a2 + a3 <= m; ++a1)
                if (!tangential_only || a3 == 0) alphas.push_back({a1, a2, a3});

    double caps = 0.0;
    for (const Chart& chart : atlas.charts()) {
        std::vector<Acc> acc(alphas.size(), Acc{inf, p});
        for (std::size_t idx = 0; idx < n; ++idx) {
            const Vec3 x = grid.point(idx);
            if (!chart.contains(x)) continue;
            const Mat3 g = chart.frame(x);
            const auto dg = chart.frame_gradient(x);
            const double phi = chart.phi(x);
            // Operator vector fields v_a and their gradients dv[a][l][k] = d_l v_a,k.
            std::array<Vec3, 3> v{column(g, 0), column(g, 1), phi * column(g, 2)};
            std::array<Mat3, 3> dv{};
            const Vec3 nn = column(g, 2);
            for (int l = 0; l < 3; ++l)
                for (int k = 0; k < 3; ++k) {
                    dv[0][l][k] = dg[l][k][0];
                    dv[1][l][k] = dg[l][k][1];
                    dv[2][l][k] = -nn[l] * nn[k] + phi * dg[l][k][2];
                }
            auto first = [&](int a) {
                Vec3 r{};
                for (int c = 0; c < 3; ++c)
                    for (int l = 0; l < 3; ++l) r[c] += v[a][l] * d[c][l][idx];
                return r;
            };
            // Z_a Z_b u = sum_l a_l sum_k (d_l b_k d_k u + b_k d_l d_k u).
            auto second = [&](int a, int b) {
                Vec3 r{};
                for (int c = 0; c < 3; ++c)
                    for (int l = 0; l < 3; ++l)
                        for (int k = 0; k < 3; ++k)
                            r[c] += v[a][l] * (dv[b][l][k] * d[c][k][idx] + v[b][k] * (*h[c][l][k])[idx]);
                return r;
            };
            for (std::size_t t = 0; t < alphas.size(); ++t) {
                const MultiIndex& al = alphas[t];
                std::vector<int> ops;  // rightmost applied first
                for (int q = 0; q < al.a1; ++q) ops.push_back(0);
                for (int q = 0; q < al.a2; ++q) ops.push_back(1);
                for (int q = 0; q < al.a3; ++q) ops.push_back(2);
                Vec3 val;
                if (ops.empty())
                    val = u.at(idx);
                else if (ops.size() == 1)
                    val = first(ops[0]);
                else
                    val = second(ops[0], ops[1]);
                acc[t].add(val, qw[idx]);
            }
        }
        for (const auto& a : acc) caps += a.result();
    }
    return interior + caps;
}

}  // namespace

double norm_w_tan_ball(const Atlas& atlas, const VectorField& u, int m, double p) {
    return ball_norm(atlas, u, m, p, true);
}

double norm_w_co_ball(const Atlas& atlas, const VectorField& u, int m, double p) {
    return ball_norm(atlas, u, m, p, false);
}

}  // namespace eulerscope
