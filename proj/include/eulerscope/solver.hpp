#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "eulerscope/spectral.hpp"

namespace eulerscope {

enum class InitKind { TaylorGreen, ChannelTaylorGreen, RandomDivFree, AntiparallelTubes, Shear };

const char* to_string(InitKind k);
InitKind init_kind_from_string(const std::string& name);

struct InitParams {
    double amplitude = 1.0;      // random: target max |u|; shear/TG: scale
    double slope = 5.0 / 3.0;    // random: energy-spectrum slope
    double separation = 0.7853981633974483;  // tubes: centre distance (pi/4)
    double core = 0.3;           // tubes: Gaussian core radius
    double circulation = 1.0;    // tubes: circulation of each tube
    double perturbation = 0.1;   // tubes: centreline displacement amplitude
    double epsilon = 0.05;       // channel TG: cross-stream perturbation
};

struct SolverConfig {
    Grid3 grid;
    double dt = 1e-3;
    double t_end = 1.0;
    bool dealias = true;
    InitKind init = InitKind::TaylorGreen;
    InitParams params;
    std::uint64_t seed = 0;
    int output_every = 10;
    /// Runs stop with a divergence failure once E exceeds this multiple of E(0).
    double energy_blowup_factor = 100.0;
};

struct SolverState {
    SpectralVector uhat;
    double time = 0.0;
    std::uint64_t step = 0;
};

/// Owns the transform space and advances a SolverState.
class Solver {
public:
    explicit Solver(const Grid3& grid, bool dealias = true);

    SpectralSpace& space() { return *space_; }
    const Grid3& grid() const { return space_->grid(); }

    /// Transform, dealias (when enabled) and project a physical velocity.
    SolverState make_state(const VectorField& u) const;
    VectorField velocity(const SolverState& s) const;

    /// P[u x w], dealiased.
    SpectralVector rhs(const SpectralVector& uhat) const;

    /// Classical RK4. Throws ErrorKind::DivergenceFailure on non-finite
    /// coefficients, naming the last good time.
    void rk4_step(SolverState& s, double dt) const;

    /// max |div u| on the grid, from the spectral divergence.
    double divergence_max(const SolverState& s) const;
    double energy(const SolverState& s) const;
    /// int u . w over the grid quadrature.
    double helicity(const SolverState& s) const;
    /// dt (max|u1|/dx + max|u2|/dy + max|u3|/dz).
    double cfl(const SolverState& s, double dt) const;

private:
    std::unique_ptr<SpectralSpace> space_;
    bool dealias_;
};

/// Snapshot handed to output callbacks (an independent copy).
struct Snapshot {
    double time;
    std::uint64_t step;
    VectorField u;
};

enum class Termination { Completed, DivergenceFailure };
const char* to_string(Termination t);

struct RunSummary {
    Termination termination = Termination::Completed;
    std::string message;
    std::uint64_t steps = 0;
    double final_time = 0.0;
    double wall_seconds = 0.0;
    double energy_initial = 0.0;
    double energy_final = 0.0;
    double max_energy_drift = 0.0;    // max |E(t) - E(0)| / E(0) over steps
    double helicity_initial = 0.0;
    double helicity_final = 0.0;
    double max_divergence = 0.0;      // max over steps of max |div u|
    double max_cfl = 0.0;             // over outputs
    std::size_t outputs = 0;
};

using OutputCallback = std::function<void(const Snapshot&)>;

/// Builds the initial field, then steps to t_end. The callback runs at step 0,
/// every output_every steps and at the final step. A divergence failure ends
/// the run early; outputs already delivered stay valid.
RunSummary run(const SolverConfig& config, const OutputCallback& on_output = {});

// Initial conditions ------------------------------------------------------

/// (sin x cos y cos z, -cos x sin y cos z, 0) scaled by amplitude; torus of period 2 pi.
VectorField init_taylor_green(const Grid3& grid, double amplitude = 1.0);

/// Channel of height H: TG with cos(pi z / H) plus
/// eps (0, (pi/H) cos(pi z/H) sin y, -sin(pi z/H) cos y).
VectorField init_channel_taylor_green(const Grid3& grid, double epsilon, double amplitude = 1.0);

/// Seeded solenoidal field, coefficient envelope |k|^{-(slope + 2)/2} inside
/// the dealiasing band, scaled to max |u| = amplitude.
VectorField init_random_divfree(const Grid3& grid, std::uint64_t seed, double slope, double amplitude = 1.0);

/// Counter-rotating Gaussian tubes along x at y = pi -+ separation/2 with
/// centreline z = pi + perturbation cos x; velocity by Biot-Savart.
VectorField init_antiparallel_tubes(const Grid3& grid, double separation, double core, double circulation,
                                    double perturbation);

/// u = amplitude (sin z, 0, 0) on the torus; amplitude (cos(pi z/H), 0, 0) on the channel.
VectorField init_shear(const Grid3& grid, double amplitude = 1.0);

VectorField make_initial(const Grid3& grid, InitKind kind, const InitParams& params, std::uint64_t seed);

}  // namespace eulerscope
