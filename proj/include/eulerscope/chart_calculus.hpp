#pragma once

#include <functional>
#include <optional>

#include "eulerscope/chart.hpp"
#include "eulerscope/identities.hpp"
#include "eulerscope/norms.hpp"

namespace eulerscope {

/// Exact velocity gradient, d[i][j] = d_j u_i, used as the reference for
/// normal derivatives when available.
using JacobianFn = std::function<Mat3(const Vec3&)>;

/// Normal derivatives of u on a boundary cap, rebuilt from the vorticity and
/// tangential derivatives only:
///   d_n u_n      = -sum_{i,k} (d_i g_ik) u_k^psi - d_tau u_tau - d_taubar u_taubar
///   d_n u_tau    =  (w - L) . tau_bar
///   d_n u_taubar = -(w - L) . tau
/// with L = sum_{l=1,2} g_l x d_l^psi u + n x sum_m (d_n g_m) u_m^psi.
/// Velocity grids on the ball use Bounded axes (finite differences).
struct NormalReconstruction {
    std::size_t nodes = 0;
    double error_tau = 0.0;
    double error_tau_bar = 0.0;
    double error_normal = 0.0;

    double linf_dn_u = 0.0;
    double linf_omega = 0.0;
    double w1inf_tan = 0.0;
    /// ||d_n u|| / (||w|| + ||u||_{W^{1,inf}_tan}) over the cap, 0 when both vanish.
    double lemma_ratio = 0.0;

    double max_error() const { return std::max({error_tau, error_tau_bar, error_normal}); }
};

/// Reference derivatives come from `exact` when given, otherwise from the
/// finite-difference Jacobian of u. Errors: Conditioning when the frame
/// degenerates (|g^T g - I| > 1e-10) at a cap node; Context when the cap
/// holds no grid node; Inconsistency when omega differs from curl(u).
NormalReconstruction normal_reconstruction(const Chart& chart, const VectorField& u, const VectorField& omega,
                                           const JacobianFn& exact = {});

/// Curved split of w . grad u on a cap into
///   A    = sum_{a,m <= 2} ((n x g_m) . g_a) d_n u_m^psi d_a^psi u
///   B    = sum_{b <= 2} ((g_b x d_b^psi u) . n) d_n u
///   Lbar = the remaining tangential-tangential and frame-derivative terms,
/// with d_n u taken from the reconstruction above.
struct CurvedStretchSplit {
    std::size_t nodes = 0;
    double linf_full = 0.0;
    double linf_a = 0.0;
    double linf_b = 0.0;
    double linf_lbar = 0.0;
    double residual = 0.0;  // max |full - A - B - Lbar|

    double linf_omega = 0.0;
    double w1inf_tan = 0.0;
    /// ||w . grad u|| / (||w|| ||u||_tan + ||u||_tan^2).
    double stretch_ratio = 0.0;
    /// ||Lbar|| / ||u||_tan^2.
    double lbar_ratio = 0.0;
};

CurvedStretchSplit vortex_stretch_split_chart(const Chart& chart, const VectorField& u, const VectorField& omega);

/// Dispatch on the grid: flat domains take no chart, the ball requires one.
/// Errors: Context for a missing chart on the ball or a chart on a flat domain.
struct StretchSplit {
    double residual = 0.0;
    double linf_full = 0.0;
    std::optional<FlatStretchSplit> flat;
    std::optional<CurvedStretchSplit> curved;
};

StretchSplit vortex_stretch_split(const VectorField& u, const VectorField& omega, const Chart* chart = nullptr);

/// Chart-summed norms on the ball:
///   ||u||_{W^{k,p}(U0)} + sum_i sum_alpha ||Z^alpha u||_{L^p(U_i)},
/// with Z = (d_tau, d_taubar, phi d_n) on caps and Cartesian derivatives on U0.
double norm_w_tan_ball(const Atlas& atlas, const VectorField& u, int m, double p);
double norm_w_co_ball(const Atlas& atlas, const VectorField& u, int m, double p);

}  // namespace eulerscope
