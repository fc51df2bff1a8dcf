#include <cmath>
#include <numbers>
#include <random>

#include "eulerscope/error.hpp"
#include "eulerscope/solver.hpp"

namespace eulerscope {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

void require_2pi_torus(const Grid3& g, const char* what) {
    bool ok = g.domain().kind() == DomainKind::Torus3;
    for (int a = 0; a < 3 && ok; ++a) ok = g.axis(a).kind == AxisKind::Periodic && close(g.axis(a).length, kTwoPi);
    if (!ok) throw Error(ErrorKind::UnsupportedGrid, std::string(what) + " needs a torus grid of period 2 pi");
}

bool is_channel(const Grid3& g) { return g.axis(2).kind == AxisKind::WallParity; }

}  // namespace

const char* to_string(InitKind k) {
    switch (k) {
        case InitKind::TaylorGreen: return "taylor-green";
        case InitKind::ChannelTaylorGreen: return "channel-taylor-green";
        case InitKind::RandomDivFree: return "random";
        case InitKind::AntiparallelTubes: return "tubes";
        case InitKind::Shear: return "shear";
    }
    return "unknown";
}

InitKind init_kind_from_string(const std::string& name) {
    for (auto k : {InitKind::TaylorGreen, InitKind::ChannelTaylorGreen, InitKind::RandomDivFree,
                   InitKind::AntiparallelTubes, InitKind::Shear})
        if (name == to_string(k)) return k;
    throw Error(ErrorKind::Parameter, "unknown initial condition '" + name + "'");
}

VectorField init_taylor_green(const Grid3& grid, double amplitude) {
    require_2pi_torus(grid, "Taylor-Green");
    return VectorField::sample(grid, [amplitude](const Vec3& x) {
        return Vec3{amplitude * std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]),
                    -amplitude * std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]), 0.0};
    });
}

VectorField init_channel_taylor_green(const Grid3& grid, double epsilon, double amplitude) {
    if (!is_channel(grid) || !close(grid.axis(0).length, kTwoPi) || !close(grid.axis(1).length, kTwoPi))
        throw Error(ErrorKind::UnsupportedGrid, "channel Taylor-Green needs a channel grid with 2 pi periods");
    const double q = kPi / grid.axis(2).length;
    return VectorField::sample(
        grid,
        [=](const Vec3& x) {
            const double cz = std::cos(q * x[2]);
            const double sz = std::sin(q * x[2]);
            return Vec3{amplitude * std::sin(x[0]) * std::cos(x[1]) * cz,
                        -amplitude * std::cos(x[0]) * std::sin(x[1]) * cz + epsilon * q * cz * std::sin(x[1]),
                        -epsilon * sz * std::cos(x[1])};
        },
        kVelocityParity);
}

VectorField init_shear(const Grid3& grid, double amplitude) {
    if (is_channel(grid)) {
        const double q = kPi / grid.axis(2).length;
        return VectorField::sample(
            grid, [=](const Vec3& x) { return Vec3{amplitude * std::cos(q * x[2]), 0.0, 0.0}; }, kVelocityParity);
    }
    if (grid.axis(2).kind != AxisKind::Periodic || !close(grid.axis(2).length, kTwoPi))
        throw Error(ErrorKind::UnsupportedGrid, "shear needs a channel or a z-period of 2 pi");
    return VectorField::sample(grid, [=](const Vec3& x) { return Vec3{amplitude * std::sin(x[2]), 0.0, 0.0}; });
}

VectorField init_random_divfree(const Grid3& grid, std::uint64_t seed, double slope, double amplitude) {
    SpectralSpace sp(grid);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    SpectralVector c{SpectralComponent(sp.size()), SpectralComponent(sp.size()), SpectralComponent(sp.size())};
    const std::size_t top = sp.nm() - 1;
    for (std::size_t m = 0; m < sp.nm(); ++m)
        for (std::size_t j = 0; j < sp.ny(); ++j)
            for (std::size_t i = 0; i < sp.nkx(); ++i) {
                const double k = std::sqrt(sp.kx(i) * sp.kx(i) + sp.ky(j) * sp.ky(j) + sp.kz(m) * sp.kz(m));
                const std::size_t q = sp.index(i, j, m);
                // Draw for every mode so the stream does not depend on the band.
                Complex draw[3];
                for (auto& d : draw) {
                    const double re = normal(rng);
                    const double im = normal(rng);
                    d = Complex{re, im};
                }
                if (k == 0.0 || !sp.keep(i, j, m)) continue;
                const double env = std::pow(k, -(slope + 2.0) / 2.0);
                for (int a = 0; a < 3; ++a) c[a][q] = env * draw[a];
                if (sp.channel() && (m == 0 || m == top)) c[2][q] = 0.0;
            }
    const auto par = sp.velocity_parity();
    // Round trip through physical space makes the coefficients those of a real field.
    SpectralVector h = sp.forward(sp.backward(c, par));
    dealias(sp, h);
    leray_project(sp, h);
    VectorField u = sp.backward(h, par);
    const double m = u.max_abs();
    if (m > 0.0) {
        for (int a = 0; a < 3; ++a)
            for (auto& v : u[a].values()) v *= amplitude / m;
    }
    return u;
}

VectorField init_antiparallel_tubes(const Grid3& grid, double separation, double core, double circulation,
                                    double perturbation) {
    require_2pi_torus(grid, "antiparallel tubes");
    if (!(core > 0.0)) throw Error(ErrorKind::Parameter, "tube core radius must be positive");
    if (separation < 2.0 * core)
        throw Error(ErrorKind::Parameter, "tube separation is below two core radii: the tubes overlap");
    if (separation + 2.0 * core > kTwoPi) throw Error(ErrorKind::Parameter, "tube separation exceeds the period");
    if (circulation == 0.0) return VectorField(grid);

    const double y1 = kPi - 0.5 * separation;
    const double y2 = kPi + 0.5 * separation;
    const double peak = circulation / (kPi * core * core);
    auto wrap = [](double d) { return std::remainder(d, kTwoPi); };
    const VectorField omega = VectorField::sample(grid, [=](const Vec3& x) {
        const double zc = kPi + perturbation * std::cos(x[0]);
        const double dz = wrap(x[2] - zc);
        const double d1 = wrap(x[1] - y1);
        const double d2 = wrap(x[1] - y2);
        const double g1 = std::exp(-(d1 * d1 + dz * dz) / (core * core));
        const double g2 = std::exp(-(d2 * d2 + dz * dz) / (core * core));
        return Vec3{peak * (g1 - g2), 0.0, 0.0};
    });

    SpectralSpace sp(grid);
    const SpectralVector w = sp.forward(omega);
    // Biot-Savart: u = i k x w / |k|^2.
    SpectralVector u{SpectralComponent(sp.size()), SpectralComponent(sp.size()), SpectralComponent(sp.size())};
    const Complex I{0.0, 1.0};
    for (std::size_t m = 0; m < sp.nm(); ++m)
        for (std::size_t j = 0; j < sp.ny(); ++j)
            for (std::size_t i = 0; i < sp.nkx(); ++i) {
                const double kx = sp.kx_eff(i);
                const double ky = sp.ky_eff(j);
                const double kz = sp.kz_eff(m);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                const std::size_t q = sp.index(i, j, m);
                u[0][q] = I * (ky * w[2][q] - kz * w[1][q]) / k2;
                u[1][q] = I * (kz * w[0][q] - kx * w[2][q]) / k2;
                u[2][q] = I * (kx * w[1][q] - ky * w[0][q]) / k2;
            }
    dealias(sp, u);
    leray_project(sp, u);
    return sp.backward(u, sp.velocity_parity());
}

VectorField make_initial(const Grid3& grid, InitKind kind, const InitParams& p, std::uint64_t seed) {
    switch (kind) {
        case InitKind::TaylorGreen: return init_taylor_green(grid, p.amplitude);
        case InitKind::ChannelTaylorGreen: return init_channel_taylor_green(grid, p.epsilon, p.amplitude);
        case InitKind::RandomDivFree: return init_random_divfree(grid, seed, p.slope, p.amplitude);
        case InitKind::AntiparallelTubes:
            return init_antiparallel_tubes(grid, p.separation, p.core, p.circulation, p.perturbation);
        case InitKind::Shear: return init_shear(grid, p.amplitude);
    }
    throw Error(ErrorKind::Parameter, "unknown initial condition");
}

}  // namespace eulerscope
