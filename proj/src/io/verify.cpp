#include "eulerscope/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "eulerscope/error.hpp"
#include "eulerscope/hardy.hpp"
#include "eulerscope/solver.hpp"

namespace eulerscope {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kPi = 3.141592653589793;

void add(std::vector<CheckResult>& out, const std::string& suite, const std::string& name, double value,
         double limit) {
    out.push_back({suite, name, value, limit, value <= limit});
}

std::size_t channel_n(const VerifyOptions& o) { return o.channel_n ? o.channel_n : o.n; }

Grid3 channel_grid(std::size_t n) { return Grid3::channel(n, n, n + 1, kTwoPi, kTwoPi, kPi); }

struct SuiteField {
    std::string label;
    VectorField u;
};

std::vector<SuiteField> suite_fields(const VerifyOptions& o) {
    std::vector<SuiteField> out;
    const Grid3 torus = Grid3::torus(o.n, kTwoPi);
    const Grid3 channel = channel_grid(channel_n(o));
    for (int f = 0; f < o.fields; ++f) {
        const std::uint64_t s = o.seed + static_cast<std::uint64_t>(f);
        out.push_back({"torus seed " + std::to_string(s), init_random_divfree(torus, s, 5.0 / 3.0)});
        out.push_back({"channel seed " + std::to_string(s), init_random_divfree(channel, s, 5.0 / 3.0)});
    }
    return out;
}

void suite_identities(const VerifyOptions& o, std::vector<CheckResult>& out) {
    for (const auto& f : suite_fields(o)) {
        const VectorField w = curl(f.u);
        const DzIdentityReport r = dz_identities(f.u, w);
        add(out, "identities", f.label + " w3 = d1u2 - d2u1", r.omega3, 1e-9);
        add(out, "identities", f.label + " dz u1 = w2 + d1u3", r.dz_u1, 1e-9);
        add(out, "identities", f.label + " dz u2 = -w1 + d2u3", r.dz_u2, 1e-9);
        add(out, "identities", f.label + " dz u3 = -d1u1 - d2u2", r.dz_u3, 1e-9);
    }
}

double ratio(double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInfinity : 0.0); }

void suite_constants(const VerifyOptions& o, std::vector<CheckResult>& out) {
    // Ratios are compared with 1 plus rounding slack.
    const double one = 1.0 + 1e-12;
    for (const auto& f : suite_fields(o)) {
        const VectorField w = curl(f.u);
        const DzIdentityReport r = dz_identities(f.u, w);
        const FlatStretchSplit s = vortex_stretch_split_flat(f.u, w);
        add(out, "constants", f.label + " |w3| / (2 |grad_h u|)", ratio(r.linf_omega3, 2.0 * r.linf_grad_h_u), one);
        add(out, "constants", f.label + " |dz u| / (|w| + 2 |grad_h u|)",
            ratio(r.linf_dz_u, r.linf_omega + 2.0 * r.linf_grad_h_u), one);
        add(out, "constants", f.label + " |w.grad u| / (3|w||grad_h u| + 4|grad_h u|^2)", ratio(s.linf_full, s.bound),
            one);
        add(out, "constants", f.label + " split residual", s.residual, 1e-10);
    }
    add(out, "constants", "pointwise stretch bound on 1e5 random gradients",
        stretch_constant_ratio(100000, o.seed, kStretchC1, kStretchC2), one);
}

void suite_chart(const VerifyOptions& o, std::vector<CheckResult>& out) {
    add(out, "chart", "max |g^T g - I| at sampled cap points", frame_orthonormality(o.frame_samples, o.seed), 1e-10);
    // Sixth-order differences: the radial-stream limit scales with h^6 from
    // 1e-6 at 48 nodes.
    const double h_ratio = 47.0 / static_cast<double>(o.n - 1);
    const double limit = 1e-6 * std::max(1.0, std::pow(h_ratio, 6));
    for (BallField f : {BallField::RigidRotation, BallField::RadialStream}) {
        const std::string label = f == BallField::RigidRotation ? "rigid rotation" : "radial stream";
        const BallReconstruction r = ball_reconstruction(f, o.n);
        add(out, "chart", label + " normal-derivative reconstruction error", r.max_error,
            f == BallField::RigidRotation ? 1e-6 : limit);
        add(out, "chart", label + " curved stretch split residual", r.split_residual, 1e-10);
        add(out, "chart", label + " |dn u| / (|w| + |u|_tan) (finite)", std::isfinite(r.lemma_ratio) ? 0.0 : 1.0,
            0.0);
    }
}

void suite_hardy(const VerifyOptions& o, std::vector<CheckResult>& out) {
    const Grid3 g = channel_grid(channel_n(o));
    const double h = g.axis(2).length;
    const CompatibleTriplet t = make_slab_triplet(g.domain(), 0.1 * h, 0.3 * h);
    for (int f = 0; f < o.fields; ++f) {
        const std::uint64_t s = o.seed + static_cast<std::uint64_t>(f);
        const VectorField u = init_random_divfree(g, s, 5.0 / 3.0);
        const std::string label = "channel seed " + std::to_string(s);
        const HardyReport whole = hardy_quotient(u);
        const HardyReport near = hardy_quotient(u, &t.omega1);
        add(out, "hardy", label + " wall trace of u3", whole.wall_trace, 0.0);
        add(out, "hardy", label + " |u3/phi| / |dz u3|", whole.ratio, 1.0 + 1e-9);
        add(out, "hardy", label + " |u3/phi|_Omega1 / |dz u3|_Omega1", near.ratio, 1.0 + 1e-9);
    }
}

void suite_triplet(const VerifyOptions& o, std::vector<CheckResult>& out) {
    int rejected = 0;
    for (const auto& c : random_triplets(o.random_triplets, o.seed)) {
        const TripletValidation v = validate_triplet(c.triplet, c.domain);
        if (!v.pass()) ++rejected;
    }
    add(out, "triplet", std::to_string(o.random_triplets) + " random slab triplets rejected", rejected, 0.0);
    for (const auto& c : broken_triplets()) {
        const TripletValidation v = validate_triplet(c.triplet, c.domain);
        bool named = false;
        for (const auto& f : v.failures) named = named || f.rfind(c.expected, 0) == 0;
        add(out, "triplet", c.name + " rejected with " + c.expected, named ? 0.0 : 1.0, 0.0);
    }
}

}  // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> s{"identities", "constants", "chart", "hardy", "triplet"};
    return s;
}

std::vector<CheckResult> run_verify(const std::string& suite, const VerifyOptions& o) {
    const auto& names = verify_suites();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
        throw Error(ErrorKind::Parameter, "unknown suite '" + suite + "' (identities, constants, chart, hardy, triplet, all)");
    if (o.n < kVerifyMinN || channel_n(o) < kVerifyMinN)
        throw Error(ErrorKind::Parameter, "grid below minimum: N must be at least " + std::to_string(kVerifyMinN));
    if (o.n % 2 != 0 || channel_n(o) % 2 != 0) throw Error(ErrorKind::Parameter, "N must be even");
    if (o.fields < 1) throw Error(ErrorKind::Parameter, "need at least one field");
    std::vector<CheckResult> out;
    auto want = [&](const char* s) { return suite == "all" || suite == s; };
    if (want("identities")) suite_identities(o, out);
    if (want("constants")) suite_constants(o, out);
    if (want("chart")) suite_chart(o, out);
    if (want("hardy")) suite_hardy(o, out);
    if (want("triplet")) suite_triplet(o, out);
    return out;
}

std::string format_checks(const std::vector<CheckResult>& checks) {
    std::ostringstream os;
    char buf[64];
    for (const auto& c : checks) {
        os << (c.pass ? "ok    " : "FAIL  ") << c.suite << "  " << c.name;
        std::snprintf(buf, sizeof buf, "  value=%.3e limit=%.3e", c.value, c.limit);
        os << buf << "\n";
    }
    return os.str();
}

Grid3 ball_grid(std::size_t n) {
    const Axis a{AxisKind::Bounded, n, -1.0, 2.0};
    return Grid3(DomainSpec::ball(), {a, a, a});
}

VectorField ball_field(const Grid3& grid, BallField f) {
    return VectorField::sample(grid, [f](const Vec3& x) -> Vec3 {
        if (f == BallField::RigidRotation) return {-x[1], x[0], 0.0};
        return {x[0] * std::cos(x[2]), x[1] * std::cos(x[2]), -2.0 * std::sin(x[2])};
    });
}

JacobianFn ball_field_jacobian(BallField f) {
    return [f](const Vec3& x) -> Mat3 {
        if (f == BallField::RigidRotation) return Mat3{{{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
        const double c = std::cos(x[2]);
        const double s = std::sin(x[2]);
        return Mat3{{{c, 0.0, -x[0] * s}, {0.0, c, -x[1] * s}, {0.0, 0.0, -2.0 * c}}};
    };
}

BallReconstruction ball_reconstruction(BallField f, std::size_t n) {
    const Grid3 g = ball_grid(n);
    const VectorField u = ball_field(g, f);
    const VectorField w = curl(u);
    const Atlas atlas = build_ball_atlas(6, 0.5);
    const JacobianFn exact = ball_field_jacobian(f);
    BallReconstruction r;
    for (const Chart& c : atlas.charts()) {
        const NormalReconstruction nr = normal_reconstruction(c, u, w, exact);
        r.max_error = std::max(r.max_error, nr.max_error());
        r.lemma_ratio = std::max(r.lemma_ratio, nr.lemma_ratio);
        r.nodes += nr.nodes;
        const CurvedStretchSplit s = vortex_stretch_split_chart(c, u, w);
        r.split_residual = std::max(r.split_residual, s.residual / std::max(1.0, s.linf_full));
    }
    return r;
}

double frame_orthonormality(int samples, std::uint64_t seed) {
    const Atlas atlas = build_ball_atlas(6, 0.5);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> radius(0.5, 1.0);
    double dev = 0.0;
    int taken = 0;
    while (taken < samples) {
        Vec3 d{normal(rng), normal(rng), normal(rng)};
        const double len = norm(d);
        if (len == 0.0) continue;
        const double r = radius(rng);
        const Vec3 x{d[0] / len * r, d[1] / len * r, d[2] / len * r};
        for (int i : atlas.caps_containing(x)) {
            const Mat3 g = atlas.charts()[static_cast<std::size_t>(i)].frame(x);
            const Mat3 gtg = matmul(transpose(g), g);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) dev = std::max(dev, std::abs(gtg[a][b] - (a == b ? 1.0 : 0.0)));
            ++taken;
        }
    }
    return dev;
}

double stretch_constant_ratio(int samples, std::uint64_t seed, double c1, double c2) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Mat3 j{};
        for (auto& row : j)
            for (double& v : row) v = normal(rng);
        j[2][2] = -j[0][0] - j[1][1];
        const Vec3 w{j[2][1] - j[1][2], j[0][2] - j[2][0], j[1][0] - j[0][1]};
        double lhs = 0.0;
        for (int i = 0; i < 3; ++i) lhs = std::max(lhs, std::abs(j[i][0] * w[0] + j[i][1] * w[1] + j[i][2] * w[2]));
        double g = 0.0;
        for (int i = 0; i < 3; ++i) g = std::max({g, std::abs(j[i][0]), std::abs(j[i][1])});
        const double wmax = std::max({std::abs(w[0]), std::abs(w[1]), std::abs(w[2])});
        worst = std::max(worst, lhs / (c1 * wmax * g + c2 * g * g));
    }
    return worst;
}

std::vector<TripletCase> random_triplets(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<TripletCase> out;
    const DomainSpec domains[] = {DomainSpec::half_space(), DomainSpec::slab_channel_periodic(kTwoPi, kTwoPi, 1.0),
                                  DomainSpec::whole_space(), DomainSpec::torus3(kTwoPi)};
    // Admissible ranges for (a, b): a in (0, amax), b in (a, bmax).
    const double amax[] = {1.0, 0.3, 1.0, 1.5};
    const double bmax[] = {3.0, 0.49, 3.0, 3.1};
    for (int k = 0; k < count; ++k) {
        const int d = k % 4;
        const double a = 0.01 + (amax[d] - 0.01) * unit(rng);
        const double b = a + 0.005 + (bmax[d] - a - 0.005) * unit(rng);
        std::ostringstream name;
        name << to_string(domains[d].kind()) << " (" << a << ", " << b << ")";
        out.push_back({name.str(), domains[d], make_slab_triplet(domains[d], a, b), ""});
    }
    return out;
}

std::vector<TripletCase> broken_triplets() {
    std::vector<TripletCase> out;
    const DomainSpec half = DomainSpec::half_space();
    const DomainSpec channel = DomainSpec::slab_channel_periodic(kTwoPi, kTwoPi, 1.0);
    const DomainSpec whole = DomainSpec::whole_space();
    const DomainSpec torus = DomainSpec::torus3(kTwoPi);

    auto tangential = [](const std::string& name, const DomainSpec& d, double a, double b, int axis) {
        CompatibleTriplet t = make_slab_triplet(d, a, b);
        auto base = t.chi;
        t.chi = [base, axis](const Vec3& x) { return base(x) * (1.0 + 0.2 * std::sin(x[axis])); };
        return TripletCase{name, d, t, "(ii)"};
    };
    out.push_back(tangential("half-space chi depends on x1", half, 0.5, 1.0, 0));
    out.push_back(tangential("channel chi depends on x2", channel, 0.1, 0.3, 1));
    out.push_back(tangential("whole-space chi depends on x1", whole, 0.5, 1.5, 0));
    out.push_back(tangential("torus chi depends on x2", torus, 0.5, 1.5, 1));

    auto step = [](double a, double b, bool up) {
        return [=](const Vec3& x) {
            const double s = smooth_step((std::abs(x[2]) - a) / (b - a));
            return up ? s : 1.0 - s;
        };
    };
    {
        CompatibleTriplet t = make_slab_triplet(half, 0.5, 1.0);
        t.omega1 = {{{0.0, 1.0}}};
        t.omega2 = {{{1.0, kInfinity}}};
        out.push_back({"half-space zero gap", half, t, "(i)"});
    }
    {
        CompatibleTriplet t = make_slab_triplet(channel, 0.1, 0.3);
        t.omega1 = {{{0.0, 0.3}, {0.7, 1.0}}};
        t.omega2 = {{{0.3, 0.7}}};
        out.push_back({"channel zero gap", channel, t, "(i)"});
    }
    {
        CompatibleTriplet t = make_slab_triplet(whole, 0.5, 1.5);
        t.omega1 = {{{-kInfinity, -1.0}, {1.0, kInfinity}}};
        t.omega2 = {{{-1.0, 1.0}}};
        out.push_back({"whole-space zero gap", whole, t, "(i)"});
    }
    {
        CompatibleTriplet t;
        t.omega1 = {{{-kInfinity, 0.0}, {0.0, kInfinity}}};
        t.omega2 = {{{-1.0, 1.0}}};
        t.chi = step(0.0, 1.0, true);
        t.transition = {0.0, 1.0};
        out.push_back({"whole-space Omega1 touching z = 0", whole, t, "(iii)"});
    }
    {
        CompatibleTriplet t;
        t.omega1 = {{{-kInfinity, -0.5}, {-0.1, kInfinity}}};
        t.omega2 = {{{-1.0, 1.0}}};
        t.chi = [](const Vec3& x) { return x[2] <= -0.1 ? smooth_step((std::abs(x[2]) - 0.5) / 0.5) : 1.0; };
        t.transition = {0.5, 1.0};
        out.push_back({"whole-space Omega1 containing z = 0", whole, t, "(iii)"});
    }
    {
        CompatibleTriplet t;
        t.omega1 = {{{0.0, kTwoPi}}};
        t.omega2 = {{{-1.0, 1.0}}};
        t.chi = [](const Vec3& x) {
            const double z = std::fmod(std::fmod(x[2], kTwoPi) + kTwoPi, kTwoPi);
            return smooth_step(std::min(z, kTwoPi - z));
        };
        t.transition = {0.0, 1.0};
        out.push_back({"torus Omega1 touching z = 0", torus, t, "(iii)"});
    }
    return out;
}

}  // namespace eulerscope
