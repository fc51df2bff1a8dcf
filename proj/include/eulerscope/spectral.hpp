#pragma once

#include <array>
#include <vector>

#include "eulerscope/fft.hpp"
#include "eulerscope/field.hpp"

typedef struct fftw_plan_s* fftw_plan;

namespace eulerscope {

using fft::Complex;
using SpectralComponent = std::vector<Complex>;
using SpectralVector = std::array<SpectralComponent, 3>;

/// Transform space for the two solver geometries.
///
/// torus3: full 3D real-to-complex transform, index i + nkx (j + ny m) with
/// nkx = nx/2 + 1. Coefficients are normalized by 1/(nx ny nz).
///
/// slab channel (x, y periodic, z wall-to-wall with nz_nodes = Nz + 1): a
/// cosine (even) or sine (odd) transform along z followed by a 2D
/// real-to-complex transform of every z-mode plane. Mode m carries the
/// wavenumber pi m / H; sine planes m = 0 and m = Nz are identically zero.
/// Coefficients are normalized by 1/(nx ny 2 Nz).
///
/// Instances own FFTW plans and work buffers: use one per thread.
class SpectralSpace {
public:
    explicit SpectralSpace(const Grid3& grid);
    ~SpectralSpace();
    SpectralSpace(const SpectralSpace&) = delete;
    SpectralSpace& operator=(const SpectralSpace&) = delete;

    const Grid3& grid() const { return grid_; }
    bool channel() const { return channel_; }
    std::size_t nkx() const { return nkx_; }
    std::size_t ny() const { return ny_; }
    std::size_t nm() const { return nm_; }
    std::size_t size() const { return nkx_ * ny_ * nm_; }
    std::size_t index(std::size_t i, std::size_t j, std::size_t m) const { return i + nkx_ * (j + ny_ * m); }

    double kx(std::size_t i) const { return kx_[i]; }
    double ky(std::size_t j) const { return ky_[j]; }
    double kz(std::size_t m) const { return kz_[m]; }
    /// Wavenumbers used for odd derivatives: zero on Nyquist (and on the
    /// channel's top cosine mode m = Nz).
    double kx_eff(std::size_t i) const { return kx_eff_[i]; }
    double ky_eff(std::size_t j) const { return ky_eff_[j]; }
    double kz_eff(std::size_t m) const { return kz_eff_[m]; }

    /// 2/3 rule: |n| < N/3 on periodic axes, m < 2 Nz / 3 on the channel axis.
    bool keep(std::size_t i, std::size_t j, std::size_t m) const { return keep_x_[i] && keep_y_[j] && keep_z_[m]; }

    /// Channel transforms take the parity from the field (None is rejected).
    SpectralComponent forward(const ScalarField& f);
    ScalarField backward(const SpectralComponent& c, Parity parity);

    SpectralVector forward(const VectorField& u);
    VectorField backward(const SpectralVector& c, std::array<Parity, 3> parity);

    /// Parities of velocity components (None on the torus).
    std::array<Parity, 3> velocity_parity() const;
    std::array<Parity, 3> vorticity_parity() const;

private:
    Grid3 grid_;
    bool channel_ = false;
    std::size_t nx_ = 0, ny_ = 0, nz_ = 0;  // physical nodes
    std::size_t nkx_ = 0, nm_ = 0;
    std::vector<double> kx_, ky_, kz_, kx_eff_, ky_eff_, kz_eff_;
    std::vector<bool> keep_x_, keep_y_, keep_z_;

    fft::Buffer<double> real_;
    fft::Buffer<double> interior_;
    fft::Buffer<Complex> spec_;
    fftw_plan r2c_ = nullptr;
    fftw_plan c2r_ = nullptr;
    fftw_plan dct_ = nullptr;
    fftw_plan dst_ = nullptr;
};

/// Zero every coefficient outside the 2/3-rule band.
void dealias(const SpectralSpace& space, SpectralVector& u);

/// Wavenumber-wise I - k k^T / |k|^2 (k = 0 untouched). On the channel the
/// projection acts on (a1, a2, -i a3), which turns the mixed cosine/sine
/// divergence i kx a1 + i ky a2 + kz a3 into i k . v.
void leray_project(const SpectralSpace& space, SpectralVector& u);

/// Spectral divergence coefficients (cosine parity on the channel).
SpectralComponent spectral_divergence(const SpectralSpace& space, const SpectralVector& u);

/// Vorticity coefficients i k x u (vorticity parities on the channel).
SpectralVector spectral_curl(const SpectralSpace& space, const SpectralVector& u);

/// Kinetic energy (1/2) int |u|^2 by Parseval.
double spectral_energy(const SpectralSpace& space, const SpectralVector& u);

}  // namespace eulerscope
