#pragma once

#include <vector>

#include "eulerscope/identities.hpp"
#include "eulerscope/series.hpp"

namespace eulerscope {

/// Measured ||w(t)|| against the a-posteriori bound
///   B(t) = ||w(0)|| + int_0^t (C1 ||w|| G + C2 G^2) ds.
/// Global audit: w and G = ||grad_h u||_inf over the domain.
/// Local audit: chi w in place of w, G over Omega1, plus the cutoff
/// advection ||u3 (dz chi) w||_{L^inf(Omega1)} in the integrand.
struct GronwallReport {
    std::vector<double> times;
    std::vector<double> measured;
    std::vector<double> bound;
    std::vector<double> ratio;  // measured / bound (0 where the bound vanishes)
    double c1 = kStretchC1;
    double c2 = kStretchC2;
    double scale = 1.0;          // max(||w(0)||, 1): normalizes the margin
    double margin = 0.0;         // min_t (B - measured) / scale
    double quadrature_error = 0.0;  // cadence-halving estimate of the bound integral / scale
    double tolerance = 0.0;      // base tolerance + quadrature_error
    bool pass = true;            // margin >= -tolerance
};

/// Errors: EmptySeries for fewer than two samples.
GronwallReport gronwall_audit(const CriterionSeries& s, double c1 = kStretchC1, double c2 = kStretchC2,
                              double base_tolerance = 1e-3);

/// Errors: Config when the series lacks regional norms (no triplet).
GronwallReport gronwall_audit_local(const CriterionSeries& s, double c1 = kStretchC1, double c2 = kStretchC2,
                                    double base_tolerance = 1e-3);

}  // namespace eulerscope
