// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "eulerscope/chart_calculus.hpp"
#include "eulerscope/commands.hpp"
#include "eulerscope/gronwall.hpp"
#include "eulerscope/report.hpp"
#include "eulerscope/solver.hpp"
#include "eulerscope/verify.hpp"
#include "oracles.hpp"

using namespace eulerscope;
namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Pinned tolerances.
constexpr double kIdentityResidual = 1e-9;
constexpr double kIdentitySeconds = 30.0;
constexpr double kSplitResidual = 1e-10;
constexpr double kFrameDeviation = 1e-10;
constexpr double kReconstruction = 1e-6;
constexpr double kReconstructionOrder = 2.0;
constexpr double kEnergyDrift = 1e-6;
constexpr double kDivergence = 1e-12;
constexpr double kSolverSeconds = 600.0;
constexpr double kEquivalence = 1e-12;
constexpr double kAdditivity = 1e-12;
constexpr double kBruteForce = 1e-12;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s  AC%d %-22s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), s);
    std::fflush(stdout);
}

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, static_cast<double>(a)...);
    return buf;
}

/// Vorticity from the transform-space curl, independent of derivative().
VectorField spectral_vorticity(const VectorField& u) {
    SpectralSpace sp(u.grid());
    return sp.backward(spectral_curl(sp, sp.forward(u)), sp.vorticity_parity());
}

struct TestField {
    VectorField u;
    VectorField w;
};

std::vector<TestField> identity_fields() {
    std::vector<TestField> out;
    const Grid3 torus = Grid3::torus(32, kTwoPi);
    const Grid3 channel = Grid3::channel(64, 64, 65, kTwoPi, kTwoPi, M_PI);
    for (std::uint64_t s = 0; s < 20; ++s) {
        VectorField u = init_random_divfree(torus, 1000 + s, 5.0 / 3.0);
        VectorField w = spectral_vorticity(u);
        out.push_back({std::move(u), std::move(w)});
    }
    for (std::uint64_t s = 0; s < 20; ++s) {
        VectorField u = init_random_divfree(channel, 2000 + s, 5.0 / 3.0);
        VectorField w = spectral_vorticity(u);
        out.push_back({std::move(u), std::move(w)});
    }
    return out;
}

struct TgRun {
    CriterionSeries series;
    RunSummary summary;
};

TgRun monitored_run(const Grid3& grid, InitKind init, double dt, double t_end, int every,
                    std::optional<CompatibleTriplet> triplet) {
    SolverConfig c{grid, dt, t_end, true, init, {}, 0, every, 100.0};
    MonitorOptions o;
    o.triplet = std::move(triplet);
    TgRun r;
    r.summary = run(c, [&](const Snapshot& s) { r.series.append(record(s.u, s.time, o)); });
    return r;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

int main() {
    std::vector<TestField> fields;

    report(1, "dz-identities", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        fields = identity_fields();
        double worst = 0.0;
        for (const auto& f : fields) worst = std::max(worst, dz_identities(f.u, f.w).max_residual());
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return Outcome{worst < kIdentityResidual && s < kIdentitySeconds,
                       fmt("40 fields, max residual %.3g (< %.0e), %.1f s (< %.0f s)", worst, kIdentityResidual, s,
                           kIdentitySeconds)};
    });

    report(2, "stretching-constants", [&] {
        int violations = 0;
        for (const auto& f : fields) {
            const DzIdentityReport r = dz_identities(f.u, f.w);
            violations += !r.omega3_bound + !r.dz_bound;
            violations += !vortex_stretch_split_flat(f.u, f.w).bound_holds;
        }
        const double ratio = stretch_constant_ratio(100000, 5, kStretchC1, kStretchC2);
        violations += ratio > 1.0;
        return Outcome{violations == 0,
                       fmt("%.0f violations over 40 fields and 1e5 gradients (max pointwise ratio %.4f)",
                           violations, ratio)};
    });

    report(3, "stretch-split", [&] {
        double worst = 0.0;
        for (const auto& f : fields) {
            const FlatStretchSplit s = vortex_stretch_split_flat(f.u, f.w);
            worst = std::max(worst, s.residual / std::max(1.0, s.linf_full));
        }
        double curved = 0.0;
        for (BallField bf : {BallField::RigidRotation, BallField::RadialStream})
            curved = std::max(curved, ball_reconstruction(bf, 32).split_residual);
        const double m = std::max(worst, curved);
        return Outcome{m < kSplitResidual, fmt("flat %.3g, curved %.3g (< %.0e)", worst, curved, kSplitResidual)};
    });
    fields.clear();

    report(4, "chart-reconstruction", [&] {
        const double frame = frame_orthonormality(10000, 11);
        const double rigid = ball_reconstruction(BallField::RigidRotation, 48).max_error;
        const double e24 = ball_reconstruction(BallField::RadialStream, 24).max_error;
        const double e48 = ball_reconstruction(BallField::RadialStream, 48).max_error;
        const double order = std::log2(e24 / e48);
        const bool ok = frame <= kFrameDeviation && rigid < kReconstruction && e48 < kReconstruction &&
                        order >= kReconstructionOrder;
        return Outcome{ok, fmt("frame %.2g, error rigid %.2g radial %.2g at N=48, order %.2f", frame, rigid, e48,
                               order)};
    });

    TgRun tg;
    report(5, "tg-conservation", [&] {
        tg = monitored_run(Grid3::torus(64, kTwoPi), InitKind::TaylorGreen, 1e-3, 1.0, 5,
                           make_slab_triplet(DomainSpec::torus3(kTwoPi), 0.5, 1.5));
        const RunSummary& s = tg.summary;
        const bool ok = s.termination == Termination::Completed && s.max_energy_drift < kEnergyDrift &&
                        s.max_divergence < kDivergence && s.wall_seconds < kSolverSeconds;
        return Outcome{ok, fmt("drift %.3g (< %.0e), max div %.3g (< %.0e), run %.1f s (< %.0f s)",
                               s.max_energy_drift, kEnergyDrift, s.max_divergence, kDivergence, s.wall_seconds,
                               kSolverSeconds)};
    });

    report(6, "gronwall-audit", [&] {
        const GronwallReport a = gronwall_audit(tg.series);
        const TgRun ch = monitored_run(Grid3::channel(64, 64, 65, kTwoPi, kTwoPi, M_PI), InitKind::ChannelTaylorGreen,
                                       1e-3, 1.0, 10, std::nullopt);
        const GronwallReport b = gronwall_audit(ch.series);
        return Outcome{a.pass && b.pass && ch.summary.termination == Termination::Completed,
                       fmt("margin torus %.4g (tol %.2g), channel %.4g (tol %.2g)", a.margin, a.tolerance, b.margin,
                           b.tolerance)};
    });

    report(7, "integrals", [&] {
        // Cadence halving: fine = every 5 steps, coarse = every 10.
        const CriterionSeries& fine = tg.series;
        const CriterionSeries coarse = fine.subsampled(2);
        int bad = 0;
        double worst = 0.0;
        for (Criterion c : kAllCriteria) {
            const double diff = std::abs(integral(fine, c) - integral(coarse, c));
            const double est = integral_error_estimate(coarse, c);
            if (!(diff < est || diff == 0.0)) ++bad;
            if (est > 0.0) worst = std::max(worst, diff / est);
        }
        const MixedIntegral m = integral_mixed(fine);
        const double additivity = std::abs(m.total - m.omega1_term - m.omega2_term) / std::max(1.0, m.total);

        // Offline/online equivalence through the command layer.
        const fs::path dir = fs::temp_directory_path() / ("eulerscope_acceptance_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        std::ofstream(dir / "run.cfg") << "solver.init = taylor-green\ngrid.n = 32\nsolver.dt = 1e-3\n"
                                          "solver.t_end = 1\nmonitor.every = 20\noutput.snapshot_every = 20\n"
                                          "monitor.triplet = 0.5,1.5\noutput.dir = "
                                       << (dir / "online").string() << "\n";
        std::ostringstream sink;
        double equiv = INFINITY;
        if (cmd_simulate((dir / "run.cfg").string(), sink, sink) == 0) {
            AnalyzeOptions a;
            a.inputs = {(dir / "online").string()};
            a.output = (dir / "offline").string();
            if (cmd_analyze(a, sink, sink) == 0) {
                const SeriesTable on = parse_csv(read_text_file(dir / "online" / "series.csv"));
                const SeriesTable off = parse_csv(read_text_file(dir / "offline" / "series.csv"));
                if (on.columns == off.columns && on.rows.size() == off.rows.size()) {
                    equiv = 0.0;
                    for (std::size_t r = 0; r < on.rows.size(); ++r)
                        for (std::size_t c = 0; c < on.columns.size(); ++c)
                            equiv = std::max(equiv, rel(off.rows[r][c], on.rows[r][c]));
                }
            }
        }
        fs::remove_all(dir);
        const bool ok = bad == 0 && additivity < kAdditivity && equiv < kEquivalence;
        return Outcome{ok, fmt("halving: %.0f criteria over estimate (max diff/est %.3f); offline %.2g; additivity %.2g",
                               bad, worst, equiv, additivity)};
    });

    report(8, "triplet-validation", [&] {
        int accepted = 0;
        const auto good = random_triplets(50, 17);
        for (const auto& c : good) accepted += validate_triplet(c.triplet, c.domain).pass();
        int named = 0;
        const auto broken = broken_triplets();
        for (const auto& c : broken) {
            const auto v = validate_triplet(c.triplet, c.domain);
            bool hit = false;
            for (const auto& f : v.failures) hit = hit || f.rfind(c.expected, 0) == 0;
            named += !v.pass() && hit;
        }
        return Outcome{accepted == 50 && named == static_cast<int>(broken.size()),
                       fmt("%.0f/50 valid accepted, %.0f/%.0f broken rejected with the right condition", accepted, named,
                           static_cast<double>(broken.size()))};
    });

    report(9, "brute-force-norms", [&] {
        struct Case {
            Grid3 grid;
            oracle::Vector v;
            oracle::Weight w;
            std::array<Parity, 3> parity;
        };
        const Case cases[] = {
            {Grid3::torus(8, kTwoPi), oracle::random_torus_field(31, 2), {false, kTwoPi},
             {Parity::None, Parity::None, Parity::None}},
            {Grid3::channel(8, 8, 9, kTwoPi, kTwoPi, M_PI), oracle::random_channel_field(32, 2, 3, M_PI),
             {true, M_PI}, kVelocityParity},
        };
        double worst = 0.0;
        int checks = 0;
        for (const auto& c : cases) {
            const VectorField u = c.v.sample(c.grid, c.parity);
            for (int m = 0; m <= 2; ++m)
                for (double p : {2.0, kInfinity})
                    for (bool tan : {true, false}) {
                        const double got = tan ? norm_w_tan(u, m, p) : norm_w_co(u, m, p);
                        const double ref = oracle::sobolev_norm(c.v, c.grid, c.w, tan, m, p);
                        worst = std::max(worst, rel(got, ref));
                        ++checks;
                    }
        }
        return Outcome{worst < kBruteForce, fmt("%.0f norms, max relative deviation %.3g (< %.0e)", checks, worst,
                                                kBruteForce)};
    });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
