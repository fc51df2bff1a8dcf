#pragma once

#include <array>

#include "eulerscope/field.hpp"

namespace eulerscope {

/// d^order f / dx_axis^order. Fourier on periodic axes (odd derivatives of
/// the Nyquist mode are zeroed), cosine/sine series on wall-parity axes (the
/// result's parity flips for odd orders), finite differences on bounded axes.
///
/// Errors: NonPeriodicSample when a periodic line carries a Nyquist
/// coefficient above 1e-6 of the field's largest one (a jump across the period);
/// UnsupportedGrid for a parity-less field on a wall-parity axis.
ScalarField derivative(const ScalarField& f, int axis, int order = 1);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);
VectorField curl(const VectorField& u);

/// All first derivatives: d(i, j) = d_j u_i.
struct Jacobian {
    std::array<std::array<ScalarField, 3>, 3> d;

    const ScalarField& operator()(int i, int j) const { return d[i][j]; }
};

Jacobian jacobian(const VectorField& u);
VectorField curl(const Jacobian& j);
ScalarField divergence(const Jacobian& j);

}  // namespace eulerscope
