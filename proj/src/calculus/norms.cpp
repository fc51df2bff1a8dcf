#include "eulerscope/norms.hpp"

#include <cmath>

#include "eulerscope/error.hpp"

namespace eulerscope {

namespace {

void check_order(int m) {
    if (m < 0) throw Error(ErrorKind::Parameter, "Sobolev order must be nonnegative");
    if (m > 2) throw Error(ErrorKind::UnimplementedOrder, "Sobolev orders above 2 are not implemented");
}

void check_exponent(double p) {
    if (!(p >= 1.0)) throw Error(ErrorKind::Parameter, "Lebesgue exponent must be >= 1");
}

void check_mask(const Mask* mask, std::size_t n) {
    if (mask != nullptr && mask->size() != n) throw Error(ErrorKind::Parameter, "mask size does not match the grid");
}

// Multiply every component by a z-profile sampled per node.
VectorField scaled(const VectorField& u, const std::vector<double>& per_k) {
    VectorField out(u.grid(), {u[0].parity(), u[1].parity(), u[2].parity()});
    const auto d = u.grid().dims();
    const std::size_t plane = d[0] * d[1];
    for (int c = 0; c < 3; ++c)
        for (std::size_t idx = 0; idx < u.grid().size(); ++idx) out[c][idx] = u[c][idx] * per_k[idx / plane];
    return out;
}

VectorField component_derivative(const VectorField& u, int axis, int order = 1) {
    return VectorField(derivative(u[0], axis, order), derivative(u[1], axis, order), derivative(u[2], axis, order));
}

}  // namespace

ConormalSet conormal_derivatives(const VectorField& u, int max_order) {
    check_order(max_order);
    const Grid3& g = u.grid();
    if (!g.domain().is_flat())
        throw Error(ErrorKind::UnsupportedKind, "flat conormal derivatives requested on a curved domain");

    std::vector<double> phi(g.dims()[2]);
    std::vector<double> phi_dphi(g.dims()[2]);
    std::vector<double> phi2(g.dims()[2]);
    for (std::size_t k = 0; k < phi.size(); ++k) {
        const auto w = weight_profile(g.domain(), g.axis(2).coord(k), WeightSign::Absolute);
        phi[k] = w.phi;
        phi_dphi[k] = w.phi * w.dphi;
        phi2[k] = w.phi * w.phi;
    }

    ConormalSet set;
    set.max_order = max_order;
    set.indices.push_back({0, 0, 0});
    set.terms.push_back(u);
    if (max_order == 0) return set;

    const VectorField d1 = component_derivative(u, 0);
    const VectorField d2 = component_derivative(u, 1);
    const VectorField dz = component_derivative(u, 2);
    set.indices.push_back({1, 0, 0});
    set.terms.push_back(d1);
    set.indices.push_back({0, 1, 0});
    set.terms.push_back(d2);
    set.indices.push_back({0, 0, 1});
    set.terms.push_back(scaled(dz, phi));
    if (max_order == 1) return set;

    set.indices.push_back({2, 0, 0});
    set.terms.push_back(component_derivative(d1, 0));
    set.indices.push_back({1, 1, 0});
    set.terms.push_back(component_derivative(d1, 1));
    set.indices.push_back({0, 2, 0});
    set.terms.push_back(component_derivative(d2, 1));
    set.indices.push_back({1, 0, 1});
    set.terms.push_back(scaled(component_derivative(dz, 0), phi));
    set.indices.push_back({0, 1, 1});
    set.terms.push_back(scaled(component_derivative(dz, 1), phi));

    const VectorField dzz = component_derivative(dz, 2);
    const VectorField a = scaled(dz, phi_dphi);
    const VectorField b = scaled(dzz, phi2);
    VectorField z3z3(g, {u[0].parity(), u[1].parity(), u[2].parity()});
    for (int c = 0; c < 3; ++c)
        for (std::size_t idx = 0; idx < g.size(); ++idx) z3z3[c][idx] = a[c][idx] + b[c][idx];
    set.indices.push_back({0, 0, 2});
    set.terms.push_back(std::move(z3z3));
    return set;
}

double lp_norm(const ScalarField& f, double p, const Mask* mask) {
    check_exponent(p);
    check_mask(mask, f.size());
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (mask == nullptr || (*mask)[i]) m = std::max(m, std::abs(f[i]));
        return m;
    }
    const auto w = f.grid().quadrature_weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (mask == nullptr || (*mask)[i]) acc += w[i] * std::pow(std::abs(f[i]), p);
    return std::pow(acc, 1.0 / p);
}

double lp_norm(const VectorField& u, double p, const Mask* mask) {
    if (std::isinf(p)) {
        return std::max({lp_norm(u[0], p, mask), lp_norm(u[1], p, mask), lp_norm(u[2], p, mask)});
    }
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) acc += std::pow(lp_norm(u[c], p, mask), p);
    return std::pow(acc, 1.0 / p);
}

double sobolev_norm(const ConormalSet& set, bool tangential_only, int m, double p, const Mask* mask) {
    check_order(m);
    check_exponent(p);
    if (m > set.max_order) throw Error(ErrorKind::Parameter, "conormal set computed to a lower order");
    double acc = 0.0;
    for (std::size_t t = 0; t < set.indices.size(); ++t) {
        const auto& alpha = set.indices[t];
        if (alpha.order() > m || (tangential_only && !alpha.tangential())) continue;
        const double v = lp_norm(set.terms[t], p, mask);
        acc += std::isinf(p) ? v : std::pow(v, p);
    }
    return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

double norm_w_tan(const VectorField& u, int m, double p, const Mask* mask) {
    check_order(m);
    return sobolev_norm(conormal_derivatives(u, m), true, m, p, mask);
}

double norm_w_co(const VectorField& u, int m, double p, const Mask* mask) {
    check_order(m);
    return sobolev_norm(conormal_derivatives(u, m), false, m, p, mask);
}

}  // namespace eulerscope
