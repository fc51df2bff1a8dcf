#include "eulerscope/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

#include "eulerscope/error.hpp"

namespace eulerscope {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double signed_mode(std::size_t i, std::size_t n) {
    return i <= n / 2 ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(n);
}

bool keep_periodic(std::size_t i, std::size_t n) { return 3.0 * std::abs(signed_mode(i, n)) < static_cast<double>(n); }

}  // namespace

SpectralSpace::SpectralSpace(const Grid3& grid) : grid_(grid) {
    const auto& ax = grid.axis(0);
    const auto& ay = grid.axis(1);
    const auto& az = grid.axis(2);
    if (ax.kind != AxisKind::Periodic || ay.kind != AxisKind::Periodic)
        throw Error(ErrorKind::UnsupportedGrid, "spectral solver needs periodic x and y axes");
    if (az.kind == AxisKind::Periodic) {
        channel_ = false;
    } else if (az.kind == AxisKind::WallParity) {
        channel_ = true;
    } else {
        throw Error(ErrorKind::UnsupportedGrid, "spectral solver needs a periodic or wall-parity z axis");
    }
    nx_ = ax.n;
    ny_ = ay.n;
    nz_ = az.n;
    nkx_ = nx_ / 2 + 1;
    nm_ = nz_;  // channel: Nz + 1 modes on Nz + 1 nodes

    for (std::size_t i = 0; i < nkx_; ++i) {
        kx_.push_back(kTwoPi * static_cast<double>(i) / ax.length);
        kx_eff_.push_back(i == nx_ / 2 ? 0.0 : kx_.back());
        keep_x_.push_back(keep_periodic(i, nx_));
    }
    for (std::size_t j = 0; j < ny_; ++j) {
        ky_.push_back(kTwoPi * signed_mode(j, ny_) / ay.length);
        ky_eff_.push_back(j == ny_ / 2 ? 0.0 : ky_.back());
        keep_y_.push_back(keep_periodic(j, ny_));
    }
    if (!channel_) {
        for (std::size_t m = 0; m < nz_; ++m) {
            kz_.push_back(kTwoPi * signed_mode(m, nz_) / az.length);
            kz_eff_.push_back(m == nz_ / 2 ? 0.0 : kz_.back());
            keep_z_.push_back(keep_periodic(m, nz_));
        }
    } else {
        const std::size_t nzi = nz_ - 1;
        for (std::size_t m = 0; m < nz_; ++m) {
            kz_.push_back(std::numbers::pi * static_cast<double>(m) / az.length);
            kz_eff_.push_back(m == nzi ? 0.0 : kz_.back());
            keep_z_.push_back(3 * m < 2 * nzi);
        }
    }

    const std::size_t plane = nx_ * ny_;
    real_ = fft::Buffer<double>(plane * nz_);
    spec_ = fft::Buffer<Complex>(size());
    auto* spec = reinterpret_cast<fftw_complex*>(spec_.data());
    std::lock_guard lock(fft::planner_mutex());
    if (!channel_) {
        r2c_ = fftw_plan_dft_r2c_3d(static_cast<int>(nz_), static_cast<int>(ny_), static_cast<int>(nx_), real_.data(),
                                    spec, FFTW_ESTIMATE);
        c2r_ = fftw_plan_dft_c2r_3d(static_cast<int>(nz_), static_cast<int>(ny_), static_cast<int>(nx_), spec,
                                    real_.data(), FFTW_ESTIMATE);
    } else {
        interior_ = fft::Buffer<double>(plane * (nz_ - 2));
        const int p = static_cast<int>(plane);
        const int nz = static_cast<int>(nz_);
        const int ni = static_cast<int>(nz_ - 2);
        const fftw_r2r_kind even = FFTW_REDFT00;
        const fftw_r2r_kind odd = FFTW_RODFT00;
        dct_ = fftw_plan_many_r2r(1, &nz, p, real_.data(), nullptr, p, 1, real_.data(), nullptr, p, 1, &even,
                                  FFTW_ESTIMATE);
        dst_ = fftw_plan_many_r2r(1, &ni, p, interior_.data(), nullptr, p, 1, interior_.data(), nullptr, p, 1, &odd,
                                  FFTW_ESTIMATE);
        const int dims[2] = {static_cast<int>(ny_), static_cast<int>(nx_)};
        const int sdist = static_cast<int>(nkx_ * ny_);
        r2c_ = fftw_plan_many_dft_r2c(2, dims, nz, real_.data(), nullptr, 1, p, spec, nullptr, 1, sdist, FFTW_ESTIMATE);
        c2r_ = fftw_plan_many_dft_c2r(2, dims, nz, spec, nullptr, 1, sdist, real_.data(), nullptr, 1, p, FFTW_ESTIMATE);
    }
}

SpectralSpace::~SpectralSpace() {
    std::lock_guard lock(fft::planner_mutex());
    for (fftw_plan p : {r2c_, c2r_, dct_, dst_})
        if (p != nullptr) fftw_destroy_plan(p);
}

std::array<Parity, 3> SpectralSpace::velocity_parity() const {
    return channel_ ? kVelocityParity : std::array<Parity, 3>{Parity::None, Parity::None, Parity::None};
}

std::array<Parity, 3> SpectralSpace::vorticity_parity() const {
    return channel_ ? kVorticityParity : std::array<Parity, 3>{Parity::None, Parity::None, Parity::None};
}

SpectralComponent SpectralSpace::forward(const ScalarField& f) {
    if (!(f.grid() == grid_)) throw Error(ErrorKind::UnsupportedGrid, "field grid differs from the transform grid");
    std::copy(f.values().begin(), f.values().end(), real_.data());
    const std::size_t plane = nx_ * ny_;
    double norm = 1.0 / static_cast<double>(nx_ * ny_ * nz_);
    if (channel_) {
        norm = 1.0 / static_cast<double>(nx_ * ny_ * 2 * (nz_ - 1));
        if (f.parity() == Parity::Even) {
            fftw_execute(dct_);
        } else if (f.parity() == Parity::Odd) {
            std::copy(real_.data() + plane, real_.data() + plane * (nz_ - 1), interior_.data());
            fftw_execute(dst_);
            std::fill(real_.data(), real_.data() + plane, 0.0);
            std::copy(interior_.data(), interior_.data() + plane * (nz_ - 2), real_.data() + plane);
            std::fill(real_.data() + plane * (nz_ - 1), real_.data() + plane * nz_, 0.0);
        } else {
            throw Error(ErrorKind::UnsupportedGrid, "channel transform needs an even or odd field");
        }
    }
    fftw_execute(r2c_);
    SpectralComponent out(size());
    for (std::size_t s = 0; s < size(); ++s) out[s] = spec_[s] * norm;
    return out;
}

ScalarField SpectralSpace::backward(const SpectralComponent& c, Parity parity) {
    std::copy(c.begin(), c.end(), spec_.data());
    fftw_execute(c2r_);
    const std::size_t plane = nx_ * ny_;
    if (channel_) {
        if (parity == Parity::Even) {
            fftw_execute(dct_);
        } else if (parity == Parity::Odd) {
            std::copy(real_.data() + plane, real_.data() + plane * (nz_ - 1), interior_.data());
            fftw_execute(dst_);
            std::fill(real_.data(), real_.data() + plane, 0.0);
            std::copy(interior_.data(), interior_.data() + plane * (nz_ - 2), real_.data() + plane);
            std::fill(real_.data() + plane * (nz_ - 1), real_.data() + plane * nz_, 0.0);
        } else {
            throw Error(ErrorKind::UnsupportedGrid, "channel transform needs an even or odd field");
        }
    }
    return ScalarField(grid_, std::vector<double>(real_.data(), real_.data() + plane * nz_), parity);
}

SpectralVector SpectralSpace::forward(const VectorField& u) { return {forward(u[0]), forward(u[1]), forward(u[2])}; }

VectorField SpectralSpace::backward(const SpectralVector& c, std::array<Parity, 3> parity) {
    return VectorField(backward(c[0], parity[0]), backward(c[1], parity[1]), backward(c[2], parity[2]));
}

void dealias(const SpectralSpace& s, SpectralVector& u) {
    for (std::size_t m = 0; m < s.nm(); ++m)
        for (std::size_t j = 0; j < s.ny(); ++j)
            for (std::size_t i = 0; i < s.nkx(); ++i)
                if (!s.keep(i, j, m)) {
                    const std::size_t q = s.index(i, j, m);
                    u[0][q] = u[1][q] = u[2][q] = 0.0;
                }
}

void leray_project(const SpectralSpace& s, SpectralVector& u) {
    const Complex I{0.0, 1.0};
    for (std::size_t m = 0; m < s.nm(); ++m) {
        const double kz = s.kz_eff(m);
        for (std::size_t j = 0; j < s.ny(); ++j) {
            const double ky = s.ky_eff(j);
            for (std::size_t i = 0; i < s.nkx(); ++i) {
                const double kx = s.kx_eff(i);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                const std::size_t q = s.index(i, j, m);
                const Complex v3 = s.channel() ? -I * u[2][q] : u[2][q];
                const Complex kv = (kx * u[0][q] + ky * u[1][q] + kz * v3) / k2;
                u[0][q] -= kx * kv;
                u[1][q] -= ky * kv;
                const Complex w3 = v3 - kz * kv;
                u[2][q] = s.channel() ? I * w3 : w3;
            }
        }
    }
}

SpectralComponent spectral_divergence(const SpectralSpace& s, const SpectralVector& u) {
    const Complex I{0.0, 1.0};
    SpectralComponent d(s.size());
    for (std::size_t m = 0; m < s.nm(); ++m)
        for (std::size_t j = 0; j < s.ny(); ++j)
            for (std::size_t i = 0; i < s.nkx(); ++i) {
                const std::size_t q = s.index(i, j, m);
                const Complex h = I * (s.kx_eff(i) * u[0][q] + s.ky_eff(j) * u[1][q]);
                d[q] = h + (s.channel() ? s.kz_eff(m) * u[2][q] : I * s.kz_eff(m) * u[2][q]);
            }
    return d;
}

SpectralVector spectral_curl(const SpectralSpace& s, const SpectralVector& u) {
    const Complex I{0.0, 1.0};
    SpectralVector w{SpectralComponent(s.size()), SpectralComponent(s.size()), SpectralComponent(s.size())};
    const std::size_t top = s.nm() - 1;
    for (std::size_t m = 0; m < s.nm(); ++m) {
        const double kz = s.kz_eff(m);
        const bool sine_mode = m != 0 && m != top;
        for (std::size_t j = 0; j < s.ny(); ++j) {
            const double ky = s.ky_eff(j);
            for (std::size_t i = 0; i < s.nkx(); ++i) {
                const double kx = s.kx_eff(i);
                const std::size_t q = s.index(i, j, m);
                if (!s.channel()) {
                    w[0][q] = I * (ky * u[2][q] - kz * u[1][q]);
                    w[1][q] = I * (kz * u[0][q] - kx * u[2][q]);
                    w[2][q] = I * (kx * u[1][q] - ky * u[0][q]);
                } else {
                    // w1 = dy u3 - dz u2, w2 = dz u1 - dx u3 (sine); w3 = dx u2 - dy u1 (cosine).
                    w[0][q] = sine_mode ? I * ky * u[2][q] + kz * u[1][q] : 0.0;
                    w[1][q] = sine_mode ? -kz * u[0][q] - I * kx * u[2][q] : 0.0;
                    w[2][q] = I * (kx * u[1][q] - ky * u[0][q]);
                }
            }
        }
    }
    return w;
}

double spectral_energy(const SpectralSpace& s, const SpectralVector& u) {
    const Grid3& g = s.grid();
    const double area = g.axis(0).length * g.axis(1).length;
    const double depth = g.axis(2).length;
    const std::size_t nx = g.dims()[0];
    const std::size_t top = s.nm() - 1;
    double acc = 0.0;
    for (std::size_t m = 0; m < s.nm(); ++m) {
        double cos_w = 1.0;
        double sin_w = 1.0;
        if (s.channel()) {
            cos_w = m == 0 ? 1.0 : (m == top ? 0.5 : 2.0);
            sin_w = (m == 0 || m == top) ? 0.0 : 2.0;
        }
        for (std::size_t j = 0; j < s.ny(); ++j)
            for (std::size_t i = 0; i < s.nkx(); ++i) {
                const double wx = (i == 0 || 2 * i == nx) ? 1.0 : 2.0;
                const std::size_t q = s.index(i, j, m);
                acc += wx * (cos_w * (std::norm(u[0][q]) + std::norm(u[1][q])) + sin_w * std::norm(u[2][q]));
            }
    }
    return 0.5 * area * depth * acc;
}

}  // namespace eulerscope
