#include "eulerscope/field.hpp"

#include <algorithm>
#include <cmath>

#include "eulerscope/error.hpp"

namespace eulerscope {

Parity flip(Parity p) {
    switch (p) {
        case Parity::Even: return Parity::Odd;
        case Parity::Odd: return Parity::Even;
        case Parity::None: return Parity::None;
    }
    return Parity::None;
}

Parity product(Parity a, Parity b) {
    if (a == Parity::None || b == Parity::None) return Parity::None;
    return a == b ? Parity::Even : Parity::Odd;
}

ScalarField::ScalarField(Grid3 grid, Parity parity)
    : grid_(std::move(grid)), values_(grid_.size(), 0.0), parity_(parity) {}

ScalarField::ScalarField(Grid3 grid, std::vector<double> values, Parity parity)
    : grid_(std::move(grid)), values_(std::move(values)), parity_(parity) {
    if (values_.size() != grid_.size())
        throw Error(ErrorKind::Parameter, "sample count does not match the grid");
}

ScalarField ScalarField::sample(const Grid3& grid, const std::function<double(const Vec3&)>& f, Parity parity) {
    ScalarField out(grid, parity);
    for (std::size_t idx = 0; idx < out.size(); ++idx) out[idx] = f(grid.point(idx));
    return out;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

VectorField::VectorField(const Grid3& grid, std::array<Parity, 3> parity)
    : comps_{ScalarField(grid, parity[0]), ScalarField(grid, parity[1]), ScalarField(grid, parity[2])} {}

VectorField::VectorField(ScalarField x, ScalarField y, ScalarField z)
    : comps_{std::move(x), std::move(y), std::move(z)} {
    if (!(comps_[0].grid() == comps_[1].grid()) || !(comps_[0].grid() == comps_[2].grid()))
        throw Error(ErrorKind::Parameter, "vector components live on different grids");
}

VectorField VectorField::sample(const Grid3& grid, const std::function<Vec3(const Vec3&)>& f,
                                std::array<Parity, 3> parity) {
    VectorField out(grid, parity);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const Vec3 v = f(grid.point(idx));
        for (int c = 0; c < 3; ++c) out[c][idx] = v[c];
    }
    return out;
}

double VectorField::max_abs() const {
    return std::max({comps_[0].max_abs(), comps_[1].max_abs(), comps_[2].max_abs()});
}

}  // namespace eulerscope
