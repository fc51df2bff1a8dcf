#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eulerscope/field.hpp"
#include "eulerscope/triplet.hpp"

namespace eulerscope {

/// Norms over the triplet regions.
struct RegionalNorms {
    double w1inf_co_omega1 = 0.0;    // ||u||_{W^{1,inf}_co(Omega1)}
    double linf_omega_omega2 = 0.0;  // ||w||_{L^inf(Omega2)}
    double linf_chi_omega = 0.0;     // ||chi w||_inf
    double linf_grad_h_u_omega1 = 0.0;
    double cutoff_advection = 0.0;   // ||u3 (dz chi) w||_{L^inf(Omega1)}
};

/// One time sample of every monitored quantity (component-max L^inf).
struct NormReport {
    double time = 0.0;
    double linf_u = 0.0;
    double linf_omega = 0.0;
    double linf_grad_h_u = 0.0;
    double linf_grad_u = 0.0;
    double w1inf_tan = 0.0;
    double w1inf_co = 0.0;
    double w2inf_co = 0.0;
    double energy = 0.0;      // (1/2) int |u|^2
    double enstrophy = 0.0;   // (1/2) int |w|^2
    double helicity = 0.0;    // int u . w
    double deformation = 0.0; // sum_{i,j} ||d_i u_j + d_j u_i||_inf
    /// (1 + ||u||) ||grad(w/|w|)|| on the mask |w| >= eps_dir max|w|; empty
    /// when the vorticity vanishes identically.
    std::optional<double> cfm;
    double cfm_mask_fraction = 0.0;
    std::optional<RegionalNorms> regional;
};

struct MonitorOptions {
    std::optional<CompatibleTriplet> triplet;
    double eps_dir = 1e-6;
};

/// Direction-field gradient ||grad xi||_inf, xi = w/|w|, with
/// d_j xi_i = d_j w_i / |w| - w_i (w . d_j w) / |w|^3 on the mask.
/// Errors: DegenerateDirection when max |w| = 0.
struct DirectionGradient {
    double linf = 0.0;
    double mask_fraction = 0.0;
};
DirectionGradient direction_gradient(const VectorField& omega, double eps_dir);

/// Computes every norm of `u` (flat torus or channel grid). The triplet, when
/// present, must pass validation (Config error otherwise).
NormReport record(const VectorField& u, double time, const MonitorOptions& options = {});

}  // namespace eulerscope
