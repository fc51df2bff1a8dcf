#pragma once

#include "eulerscope/derivatives.hpp"

namespace eulerscope {

/// Explicit constants of the vortex-stretching bound
///   ||w . grad u||_inf <= C1 ||w||_inf ||grad_h u||_inf + C2 ||grad_h u||_inf^2
/// under the component-max L^inf convention.
inline constexpr double kStretchC1 = 3.0;
inline constexpr double kStretchC2 = 4.0;

/// max over i and j in {1, 2} of ||d_j u_i||_inf.
double linf_grad_h(const Jacobian& j);
/// max over all i, j of ||d_j u_i||_inf.
double linf_grad(const Jacobian& j);

struct DzIdentityReport {
    // Max residuals of
    //   w3 = d1 u2 - d2 u1,  dz u1 = w2 + d1 u3,  dz u2 = -w1 + d2 u3,  dz u3 = -d1 u1 - d2 u2.
    double omega3 = 0.0;
    double dz_u1 = 0.0;
    double dz_u2 = 0.0;
    double dz_u3 = 0.0;

    double linf_omega = 0.0;
    double linf_omega3 = 0.0;
    double linf_grad_h_u = 0.0;
    double linf_dz_u = 0.0;

    // ||w3|| <= 2 ||grad_h u|| and ||dz u|| <= ||w|| + 2 ||grad_h u||.
    bool omega3_bound = true;
    bool dz_bound = true;

    double max_residual() const;
};

/// Fails with ErrorKind::Inconsistency when omega differs from curl(u) by
/// more than `curl_tolerance` relative to max(1, ||omega||_inf).
DzIdentityReport dz_identities(const VectorField& u, const VectorField& omega, double curl_tolerance = 1e-8);

/// Flat split w . grad u = w_h . grad_h u + w3 dz u.
struct FlatStretchSplit {
    VectorField full;
    VectorField horizontal;  // w1 d1 u + w2 d2 u
    VectorField vertical;    // w3 dz u
    double residual = 0.0;   // max |full - horizontal - vertical|

    double linf_full = 0.0;
    double linf_omega = 0.0;
    double linf_grad_h_u = 0.0;
    /// C1 ||w|| ||grad_h u|| + C2 ||grad_h u||^2.
    double bound = 0.0;
    bool bound_holds = true;
};

FlatStretchSplit vortex_stretch_split_flat(const VectorField& u, const VectorField& omega);

}  // namespace eulerscope
