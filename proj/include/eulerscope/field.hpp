#pragma once

#include <array>
#include <functional>
#include <vector>

#include "eulerscope/grid.hpp"

namespace eulerscope {

/// Reflection symmetry about the walls of a WallParity axis: Even fields
/// expand in cosines, Odd fields in sines (and vanish on the walls).
enum class Parity { None, Even, Odd };

Parity flip(Parity p);
Parity product(Parity a, Parity b);

class ScalarField {
public:
    ScalarField(Grid3 grid, Parity parity = Parity::None);
    ScalarField(Grid3 grid, std::vector<double> values, Parity parity = Parity::None);

    static ScalarField sample(const Grid3& grid, const std::function<double(const Vec3&)>& f,
                              Parity parity = Parity::None);

    const Grid3& grid() const { return grid_; }
    Parity parity() const { return parity_; }
    void set_parity(Parity p) { parity_ = p; }

    std::size_t size() const { return values_.size(); }
    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double max_abs() const;

private:
    Grid3 grid_;
    std::vector<double> values_;
    Parity parity_;
};

class VectorField {
public:
    explicit VectorField(const Grid3& grid, std::array<Parity, 3> parity = {Parity::None, Parity::None, Parity::None});
    VectorField(ScalarField x, ScalarField y, ScalarField z);

    static VectorField sample(const Grid3& grid, const std::function<Vec3(const Vec3&)>& f,
                              std::array<Parity, 3> parity = {Parity::None, Parity::None, Parity::None});

    const Grid3& grid() const { return comps_[0].grid(); }
    ScalarField& operator[](int c) { return comps_[c]; }
    const ScalarField& operator[](int c) const { return comps_[c]; }
    Vec3 at(std::size_t idx) const { return {comps_[0][idx], comps_[1][idx], comps_[2][idx]}; }

    /// Max over components and nodes (the component-max convention).
    double max_abs() const;

private:
    std::array<ScalarField, 3> comps_;
};

/// Velocity parities on a free-slip channel: tangential components even,
/// wall-normal component odd.
inline constexpr std::array<Parity, 3> kVelocityParity{Parity::Even, Parity::Even, Parity::Odd};
/// Vorticity parities that go with kVelocityParity.
inline constexpr std::array<Parity, 3> kVorticityParity{Parity::Odd, Parity::Odd, Parity::Even};

}  // namespace eulerscope
