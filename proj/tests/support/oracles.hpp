#pragma once

// Test-only oracles. Nothing here calls the library's transforms or
// difference stencils: fields are sums of separable cosine products with
// closed-form derivatives, and norms are summed node by node.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "eulerscope/field.hpp"

namespace oracle {

using eulerscope::Vec3;

/// amp * prod_a cos(k_a x_a + p_a).
struct Term {
    double amp = 0.0;
    std::array<double, 3> k{};
    std::array<double, 3> p{};

    double eval(const Vec3& x) const {
        double v = amp;
        for (int a = 0; a < 3; ++a) v *= std::cos(k[a] * x[a] + p[a]);
        return v;
    }
    Term derivative(int axis, int order = 1) const {
        Term t = *this;
        t.amp *= std::pow(k[axis], order);
        t.p[axis] += order * M_PI / 2.0;
        return t;
    }
};

struct Scalar {
    std::vector<Term> terms;
    double eval(const Vec3& x) const {
        double v = 0.0;
        for (const auto& t : terms) v += t.eval(x);
        return v;
    }
    Scalar d(int axis, int order = 1) const {
        Scalar s;
        for (const auto& t : terms) s.terms.push_back(t.derivative(axis, order));
        return s;
    }
    Scalar operator-() const {
        Scalar s = *this;
        for (auto& t : s.terms) t.amp = -t.amp;
        return s;
    }
    friend Scalar operator+(Scalar a, const Scalar& b) {
        a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
        return a;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
};

struct Vector {
    std::array<Scalar, 3> c;

    Vec3 eval(const Vec3& x) const { return {c[0].eval(x), c[1].eval(x), c[2].eval(x)}; }
    Vector d(int axis, int order = 1) const { return {{c[0].d(axis, order), c[1].d(axis, order), c[2].d(axis, order)}}; }
    Vector curl() const {
        return {{c[2].d(1) - c[1].d(2), c[0].d(2) - c[2].d(0), c[1].d(0) - c[0].d(1)}};
    }
    /// jac[i][j] = d_j u_i as closed-form scalars.
    std::array<std::array<Scalar, 3>, 3> jacobian() const {
        std::array<std::array<Scalar, 3>, 3> j;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) j[i][k] = c[i].d(k);
        return j;
    }
    eulerscope::VectorField sample(const eulerscope::Grid3& g, std::array<eulerscope::Parity, 3> parity) const {
        eulerscope::VectorField out(g, parity);
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
            const Vec3 x = g.point(idx);
            for (int a = 0; a < 3; ++a) out[a][idx] = c[a].eval(x);
        }
        return out;
    }
};

inline double cosine_phase(bool odd) { return odd ? -M_PI / 2.0 : 0.0; }

/// Solenoidal field curl(A) on a 2 pi torus; wavenumbers in [-kmax, kmax].
inline Vector random_torus_field(std::uint64_t seed, int kmax, int terms_per_component = 3) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> k(-kmax, kmax);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    Vector a;
    for (int comp = 0; comp < 3; ++comp)
        for (int t = 0; t < terms_per_component; ++t)
            a.c[comp].terms.push_back({amp(rng) / (kmax * kmax),
                                       {double(k(rng)), double(k(rng)), double(k(rng))},
                                       {phase(rng), phase(rng), phase(rng)}});
    return a.curl();
}

/// Solenoidal free-slip channel field curl(A): 2 pi periodic in x, y, height h,
/// z modes m q with q = pi / h, m <= mmax. A1, A2 are sines in z and A3 a
/// cosine, so u1, u2 are cosines and u3 a sine.
inline Vector random_channel_field(std::uint64_t seed, int kmax, int mmax, double h, int terms_per_component = 3) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> k(-kmax, kmax);
    std::uniform_int_distribution<int> m(1, mmax);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    const double q = M_PI / h;
    Vector a;
    for (int comp = 0; comp < 3; ++comp)
        for (int t = 0; t < terms_per_component; ++t)
            a.c[comp].terms.push_back({amp(rng) / (kmax * kmax),
                                       {double(k(rng)), double(k(rng)), q * m(rng)},
                                       {phase(rng), phase(rng), cosine_phase(comp < 2)}});
    return a.curl();
}

/// Weight conventions mirrored from the toolkit's documentation:
/// torus |sin(2 pi z / L)|, slab min(z, h - z) with phi' = 0 at the crest.
struct Weight {
    bool channel = false;
    double length = 2.0 * M_PI;

    double phi(double z) const {
        if (channel) return std::min(z, length - z);
        return std::abs(std::sin(2.0 * M_PI * z / length));
    }
    /// phi * phi', identical for the signed and absolute torus weights.
    double phi_dphi(double z) const {
        if (channel) {
            const double below = z;
            const double above = length - z;
            if (below == above) return 0.0;
            return below < above ? below : -above;
        }
        const double w = 2.0 * M_PI / length;
        return std::sin(w * z) * std::cos(w * z) * w;
    }
};

/// Z^alpha u at node x for |alpha| <= 2, alpha listed as (a1, a2, a3).
inline Vec3 conormal_term(const Vector& u, const Weight& w, const Vec3& x, int a1, int a2, int a3) {
    Vector base = u;
    if (a1) base = base.d(0, a1);
    if (a2) base = base.d(1, a2);
    const double z = x[2];
    if (a3 == 0) return base.eval(x);
    if (a3 == 1) {
        const Vec3 v = base.d(2).eval(x);
        return {w.phi(z) * v[0], w.phi(z) * v[1], w.phi(z) * v[2]};
    }
    const Vec3 d1 = base.d(2).eval(x);
    const Vec3 d2 = base.d(2, 2).eval(x);
    const double a = w.phi_dphi(z);
    const double b = w.phi(z) * w.phi(z);
    return {a * d1[0] + b * d2[0], a * d1[1] + b * d2[1], a * d1[2] + b * d2[2]};
}

/// W^{m,p}_tan or W^{m,p}_co by direct summation over grid nodes.
inline double sobolev_norm(const Vector& u, const eulerscope::Grid3& g, const Weight& w, bool tangential, int m,
                           double p) {
    std::vector<std::array<int, 3>> alphas;
    for (int a3 = 0; a3 <= m; ++a3)
        for (int a2 = 0; a2 <= m; ++a2)
            for (int a1 = 0; a1 <= m; ++a1)
                if (a1 + a2 + a3 <= m && (!tangential || a3 == 0)) alphas.push_back({a1, a2, a3});
    const bool inf = std::isinf(p);
    double total = 0.0;
    const auto dims = g.dims();
    for (const auto& al : alphas) {
        double part = 0.0;
        for (std::size_t k = 0; k < dims[2]; ++k)
            for (std::size_t j = 0; j < dims[1]; ++j)
                for (std::size_t i = 0; i < dims[0]; ++i) {
                    const Vec3 x = g.point(i, j, k);
                    const Vec3 v = conormal_term(u, w, x, al[0], al[1], al[2]);
                    const double wq = g.axis(0).weight(i) * g.axis(1).weight(j) * g.axis(2).weight(k);
                    for (double c : v) {
                        if (inf) part = std::max(part, std::abs(c));
                        else part += wq * std::pow(std::abs(c), p);
                    }
                }
        total += part;
    }
    return inf ? total : std::pow(total, 1.0 / p);
}

/// Central difference of a closed-form function (second order).
inline double central_difference(const std::function<double(const Vec3&)>& f, const Vec3& x, int axis, double h) {
    Vec3 a = x;
    Vec3 b = x;
    a[axis] += h;
    b[axis] -= h;
    return (f(a) - f(b)) / (2.0 * h);
}

}  // namespace oracle
