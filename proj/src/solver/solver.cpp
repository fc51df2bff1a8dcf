#include "eulerscope/solver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "eulerscope/error.hpp"

namespace eulerscope {

const char* to_string(Termination t) {
    switch (t) {
        case Termination::Completed: return "completed";
        case Termination::DivergenceFailure: return "divergence-failure";
    }
    return "unknown";
}

Solver::Solver(const Grid3& grid, bool dealias) : space_(std::make_unique<SpectralSpace>(grid)), dealias_(dealias) {}

SolverState Solver::make_state(const VectorField& u) const {
    SolverState s;
    s.uhat = space_->forward(u);
    if (dealias_) dealias(*space_, s.uhat);
    leray_project(*space_, s.uhat);
    return s;
}

VectorField Solver::velocity(const SolverState& s) const { return space_->backward(s.uhat, space_->velocity_parity()); }

SpectralVector Solver::rhs(const SpectralVector& uhat) const {
    SpectralSpace& sp = *space_;
    const VectorField u = sp.backward(uhat, sp.velocity_parity());
    const VectorField w = sp.backward(spectral_curl(sp, uhat), sp.vorticity_parity());
    VectorField c(grid(), sp.velocity_parity());
    for (std::size_t i = 0; i < grid().size(); ++i) {
        c[0][i] = u[1][i] * w[2][i] - u[2][i] * w[1][i];
        c[1][i] = u[2][i] * w[0][i] - u[0][i] * w[2][i];
        c[2][i] = u[0][i] * w[1][i] - u[1][i] * w[0][i];
    }
    SpectralVector n = sp.forward(c);
    if (dealias_) dealias(sp, n);
    leray_project(sp, n);
    return n;
}

void Solver::rk4_step(SolverState& s, double dt) const {
    if (dt == 0.0) return;
    const std::size_t n = space_->size();
    auto shifted = [&](const SpectralVector& k, double h) {
        SpectralVector v = s.uhat;
        for (int c = 0; c < 3; ++c)
            for (std::size_t q = 0; q < n; ++q) v[c][q] += h * k[c][q];
        return v;
    };
    const SpectralVector k1 = rhs(s.uhat);
    const SpectralVector k2 = rhs(shifted(k1, 0.5 * dt));
    const SpectralVector k3 = rhs(shifted(k2, 0.5 * dt));
    const SpectralVector k4 = rhs(shifted(k3, dt));
    SpectralVector next = s.uhat;
    bool finite = true;
    for (int c = 0; c < 3; ++c)
        for (std::size_t q = 0; q < n; ++q) {
            next[c][q] += dt / 6.0 * (k1[c][q] + 2.0 * k2[c][q] + 2.0 * k3[c][q] + k4[c][q]);
            finite = finite && std::isfinite(next[c][q].real()) && std::isfinite(next[c][q].imag());
        }
    if (!finite) {
        std::ostringstream os;
        os << "non-finite velocity in the step from t = " << s.time << " (last good time " << s.time << ")";
        throw Error(ErrorKind::DivergenceFailure, os.str());
    }
    s.uhat = std::move(next);
    s.time += dt;
    ++s.step;
}

double Solver::divergence_max(const SolverState& s) const {
    const Parity p = space_->channel() ? Parity::Even : Parity::None;
    return space_->backward(spectral_divergence(*space_, s.uhat), p).max_abs();
}

double Solver::energy(const SolverState& s) const { return spectral_energy(*space_, s.uhat); }

double Solver::helicity(const SolverState& s) const {
    const VectorField u = velocity(s);
    const VectorField w = space_->backward(spectral_curl(*space_, s.uhat), space_->vorticity_parity());
    const auto q = grid().quadrature_weights();
    double h = 0.0;
    for (std::size_t i = 0; i < grid().size(); ++i)
        h += q[i] * (u[0][i] * w[0][i] + u[1][i] * w[1][i] + u[2][i] * w[2][i]);
    return h;
}

double Solver::cfl(const SolverState& s, double dt) const {
    const VectorField u = velocity(s);
    double c = 0.0;
    for (int a = 0; a < 3; ++a) c += u[a].max_abs() / grid().axis(a).spacing();
    return dt * c;
}

RunSummary run(const SolverConfig& config, const OutputCallback& on_output) {
    if (!(config.dt > 0.0)) throw Error(ErrorKind::Parameter, "dt must be positive");
    if (!(config.t_end >= 0.0)) throw Error(ErrorKind::Parameter, "t_end must be nonnegative");
    if (config.output_every < 1) throw Error(ErrorKind::Parameter, "output cadence must be at least 1");
    const auto start = std::chrono::steady_clock::now();

    Solver solver(config.grid, config.dealias);
    SolverState state = solver.make_state(make_initial(config.grid, config.init, config.params, config.seed));

    RunSummary sum;
    sum.energy_initial = solver.energy(state);
    sum.energy_final = sum.energy_initial;
    sum.helicity_initial = solver.helicity(state);
    sum.helicity_final = sum.helicity_initial;
    sum.max_divergence = solver.divergence_max(state);

    auto emit = [&] {
        sum.max_cfl = std::max(sum.max_cfl, solver.cfl(state, config.dt));
        if (on_output) on_output(Snapshot{state.time, state.step, solver.velocity(state)});
        ++sum.outputs;
    };
    emit();

    const auto n_steps = static_cast<std::uint64_t>(config.t_end > 0.0 ? std::ceil(config.t_end / config.dt - 1e-9) : 0);
    const double e0 = sum.energy_initial;
    for (std::uint64_t s = 1; s <= n_steps; ++s) {
        const double h = s == n_steps ? config.t_end - static_cast<double>(s - 1) * config.dt : config.dt;
        try {
            solver.rk4_step(state, h);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DivergenceFailure) throw;
            sum.termination = Termination::DivergenceFailure;
            sum.message = e.what();
            break;
        }
        state.time = s == n_steps ? config.t_end : static_cast<double>(s) * config.dt;
        const double e = solver.energy(state);
        if (!std::isfinite(e) || e > config.energy_blowup_factor * std::max(e0, 1e-300)) {
            sum.termination = Termination::DivergenceFailure;
            std::ostringstream os;
            os << "energy " << e << " exceeded " << config.energy_blowup_factor << " x E(0) at t = " << state.time
               << " (last good time " << state.time - h << ")";
            sum.message = os.str();
            break;
        }
        sum.steps = s;
        sum.final_time = state.time;
        sum.energy_final = e;
        if (e0 > 0.0) sum.max_energy_drift = std::max(sum.max_energy_drift, std::abs(e - e0) / e0);
        sum.max_divergence = std::max(sum.max_divergence, solver.divergence_max(state));
        if (s % static_cast<std::uint64_t>(config.output_every) == 0 || s == n_steps) emit();
    }
    if (sum.termination == Termination::Completed) sum.helicity_final = solver.helicity(state);
    sum.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sum;
}

}  // namespace eulerscope
