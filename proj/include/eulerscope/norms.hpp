#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "eulerscope/derivatives.hpp"

namespace eulerscope {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Node selection for regional norms (1 = included).
using Mask = std::vector<std::uint8_t>;

/// alpha = (alpha1, alpha2, alpha3); Z^alpha = Z1^alpha1 Z2^alpha2 Z3^alpha3.
struct MultiIndex {
    int a1 = 0;
    int a2 = 0;
    int a3 = 0;

    int order() const { return a1 + a2 + a3; }
    bool tangential() const { return a3 == 0; }
};

/// Z^alpha u for every |alpha| <= max_order on a flat domain, with
/// Z = (d1, d2, |phi| dz). Second-order weighted terms use the product rule
/// Z3 Z3 f = phi phi' dz f + phi^2 dzz f and Zi Z3 f = phi di dz f.
struct ConormalSet {
    int max_order = 0;
    std::vector<MultiIndex> indices;
    std::vector<VectorField> terms;
};

ConormalSet conormal_derivatives(const VectorField& u, int max_order);

/// Vector L^p conventions: p = inf is the max over components and nodes;
/// finite p is (sum_c int |u_c|^p)^(1/p) with the grid quadrature.
double lp_norm(const VectorField& u, double p, const Mask* mask = nullptr);
double lp_norm(const ScalarField& f, double p, const Mask* mask = nullptr);

/// W^{m,p} from a precomputed set: p = inf sums the L^inf norms of the
/// Z^alpha u; finite p takes (sum_alpha ||Z^alpha u||_p^p)^(1/p).
double sobolev_norm(const ConormalSet& set, bool tangential_only, int m, double p, const Mask* mask = nullptr);

/// Tangential norm: multi-indices with alpha3 = 0, |alpha| <= m <= 2.
double norm_w_tan(const VectorField& u, int m, double p, const Mask* mask = nullptr);
/// Conormal norm: all multi-indices with |alpha| <= m <= 2.
double norm_w_co(const VectorField& u, int m, double p, const Mask* mask = nullptr);

}  // namespace eulerscope
