#pragma once

#include "eulerscope/field.hpp"
#include "eulerscope/triplet.hpp"

namespace eulerscope {

struct HardyReport {
    /// sup |u3 / phi| over the region; at phi = 0 nodes the limit d_z u3 / phi'.
    double quotient = 0.0;
    /// sup |d_z u3| over the region.
    double linf_dz_u3 = 0.0;
    /// quotient / linf_dz_u3 (0 when both vanish).
    double ratio = 0.0;
    /// max |u3| on the walls.
    double wall_trace = 0.0;
};

/// Hardy quotient ||u3 / phi||_{L^inf(region)} for flat domains with walls
/// (half-space and slab channels). A null region means the whole grid; wall
/// nodes count as part of any region interval that ends on the wall.
/// Errors: InadmissibleField when |u3| on a wall exceeds
/// wall_tolerance * max(1, ||u3||_inf); UnsupportedKind for domains without walls.
HardyReport hardy_quotient(const VectorField& u, const Region* region = nullptr, double wall_tolerance = 1e-8);

}  // namespace eulerscope
