#include <cmath>

#include <gtest/gtest.h>

#include "eulerscope/chart_calculus.hpp"
#include "eulerscope/error.hpp"
#include "eulerscope/finite_difference.hpp"
#include "eulerscope/hardy.hpp"
#include "eulerscope/verify.hpp"
#include "oracles.hpp"

using namespace eulerscope;

namespace {

constexpr double kTwoPi = 6.283185307179586;

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Io;
}

double max_diff(const ScalarField& f, const oracle::Scalar& s) {
    double e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, std::abs(f[i] - s.eval(f.grid().point(i))));
    return e;
}

Grid3 channel(std::size_t n, double h = M_PI) { return Grid3::channel(n, n, n + 1, kTwoPi, kTwoPi, h); }

}  // namespace

TEST(Derivatives, TorusMatchesClosedForm) {
    const Grid3 g = Grid3::torus(16, kTwoPi);
    const oracle::Vector v = oracle::random_torus_field(11, 3);
    const VectorField u = v.sample(g, {Parity::None, Parity::None, Parity::None});
    for (int c = 0; c < 3; ++c)
        for (int a = 0; a < 3; ++a) {
            EXPECT_LT(max_diff(derivative(u[c], a), v.c[c].d(a)), 1e-11);
            EXPECT_LT(max_diff(derivative(u[c], a, 2), v.c[c].d(a, 2)), 1e-10);
        }
}

TEST(Derivatives, ChannelMatchesClosedFormAndFlipsParity) {
    const Grid3 g = channel(16);
    const oracle::Vector v = oracle::random_channel_field(5, 3, 4, M_PI);
    const VectorField u = v.sample(g, kVelocityParity);
    for (int c = 0; c < 3; ++c) {
        const ScalarField dz = derivative(u[c], 2);
        EXPECT_EQ(dz.parity(), flip(u[c].parity()));
        EXPECT_LT(max_diff(dz, v.c[c].d(2)), 1e-11);
        EXPECT_LT(max_diff(derivative(u[c], 2, 2), v.c[c].d(2, 2)), 1e-10);
        EXPECT_LT(max_diff(derivative(u[c], 0), v.c[c].d(0)), 1e-11);
    }
    EXPECT_LT(divergence(u).max_abs(), 1e-11);
    const VectorField w = curl(u);
    const oracle::Vector wv = v.curl();
    for (int c = 0; c < 3; ++c) {
        EXPECT_EQ(w[c].parity(), kVorticityParity[c]);
        EXPECT_LT(max_diff(w[c], wv.c[c]), 1e-11);
    }
}

TEST(Derivatives, Errors) {
    const Grid3 ch = channel(8);
    const ScalarField none = ScalarField::sample(ch, [](const Vec3& x) { return std::cos(x[2]); });
    EXPECT_EQ(kind_of([&] { derivative(none, 2); }), ErrorKind::UnsupportedGrid);
    EXPECT_NO_THROW(derivative(none, 0));

    const Grid3 t = Grid3::torus(16, kTwoPi);
    const ScalarField ramp = ScalarField::sample(t, [](const Vec3& x) { return x[2]; });
    EXPECT_EQ(kind_of([&] { derivative(ramp, 2); }), ErrorKind::NonPeriodicSample);
    EXPECT_EQ(kind_of([&] { derivative(ramp, 3); }), ErrorKind::Parameter);
}

TEST(Derivatives, RoundoffOnlyFieldIsNotFlagged) {
    // d/dx of a field independent of x leaves pure rounding noise; differentiating
    // that noise again must not be mistaken for a discontinuity.
    const Grid3 t = Grid3::torus(16, kTwoPi);
    const ScalarField f = ScalarField::sample(t, [](const Vec3& x) { return 0.05 * std::sin(x[1]) * std::cos(x[2]); });
    const ScalarField dx = derivative(f, 0);
    EXPECT_LT(dx.max_abs(), 1e-14);
    ScalarField dxy(t);
    EXPECT_NO_THROW(dxy = derivative(dx, 1));
    EXPECT_LT(dxy.max_abs(), 1e-13);

    // A kink of amplitude 1e-10 is still caught.
    const ScalarField kink = ScalarField::sample(t, [](const Vec3& x) { return 1e-10 * x[0]; });
    EXPECT_EQ(kind_of([&] { derivative(kink, 0); }), ErrorKind::NonPeriodicSample);
}

TEST(Derivatives, BoundedAxesConvergeAtHighOrder) {
    auto err = [](std::size_t n) {
        const Axis a{AxisKind::Bounded, n, -1.0, 2.0};
        const Grid3 g(DomainSpec::ball(), {a, a, a});
        const ScalarField f = ScalarField::sample(g, [](const Vec3& x) { return std::sin(2 * x[0]) * std::exp(x[1]); });
        const ScalarField d = derivative(f, 0);
        double e = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const Vec3 x = g.point(i);
            e = std::max(e, std::abs(d[i] - 2 * std::cos(2 * x[0]) * std::exp(x[1])));
        }
        return e;
    };
    const double e1 = err(16);
    const double e2 = err(32);
    EXPECT_GT(std::log2(e1 / e2), 5.0) << e1 << " " << e2;
}

TEST(FiniteDifference, FornbergReproducesPolynomials) {
    const double nodes[] = {-1.0, 0.0, 0.5, 2.0};
    const auto w = fornberg_weights(0.3, nodes, 2);
    double d1 = 0.0;
    double d2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double x = nodes[i];
        d1 += w[1][i] * x * x * x;
        d2 += w[2][i] * x * x * x;
    }
    EXPECT_NEAR(d1, 3 * 0.09, 1e-13);
    EXPECT_NEAR(d2, 6 * 0.3, 1e-13);
}

TEST(Norms, MatchBruteForceOnSmallGrids) {
    struct Case {
        Grid3 grid;
        oracle::Vector v;
        oracle::Weight w;
        std::array<Parity, 3> parity;
    };
    const Case cases[] = {
        {Grid3::torus(8, kTwoPi), oracle::random_torus_field(3, 2), {false, kTwoPi}, {Parity::None, Parity::None, Parity::None}},
        {channel(8), oracle::random_channel_field(4, 2, 2, M_PI), {true, M_PI}, kVelocityParity},
    };
    for (const auto& c : cases) {
        const VectorField u = c.v.sample(c.grid, c.parity);
        for (int m = 0; m <= 2; ++m)
            for (double p : {2.0, kInfinity}) {
                const double tan = norm_w_tan(u, m, p);
                const double co = norm_w_co(u, m, p);
                const double tan_ref = oracle::sobolev_norm(c.v, c.grid, c.w, true, m, p);
                const double co_ref = oracle::sobolev_norm(c.v, c.grid, c.w, false, m, p);
                EXPECT_NEAR(tan, tan_ref, 1e-12 * std::max(1.0, tan_ref)) << "m=" << m << " p=" << p;
                EXPECT_NEAR(co, co_ref, 1e-12 * std::max(1.0, co_ref)) << "m=" << m << " p=" << p;
                EXPECT_LE(tan, co * (1 + 1e-15));
            }
    }
}

TEST(Norms, LpConventionsAndMasks) {
    const Grid3 g = Grid3::torus(8, kTwoPi);
    const VectorField u = VectorField::sample(g, [](const Vec3& x) { return Vec3{1.0, -2.0 * (x[0] > 3.0), 0.0}; });
    EXPECT_EQ(lp_norm(u, kInfinity), 2.0);
    Mask left(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) left[i] = g.point(i)[0] < 3.0;
    EXPECT_EQ(lp_norm(u, kInfinity, &left), 1.0);
    const double vol = kTwoPi * kTwoPi * kTwoPi;
    EXPECT_NEAR(lp_norm(u, 2.0), std::sqrt(vol * (1.0 + 4.0 * 4.0 / 8.0)), 1e-12);
}

TEST(Norms, Errors) {
    const Grid3 g = Grid3::torus(8, kTwoPi);
    const VectorField u(g);
    EXPECT_EQ(kind_of([&] { norm_w_co(u, 3, 2.0); }), ErrorKind::UnimplementedOrder);
    EXPECT_EQ(kind_of([&] { norm_w_co(u, -1, 2.0); }), ErrorKind::Parameter);
    EXPECT_EQ(kind_of([&] { norm_w_tan(u, 1, 0.5); }), ErrorKind::Parameter);
    Mask small(3, 1);
    EXPECT_EQ(kind_of([&] { norm_w_tan(u, 1, 2.0, &small); }), ErrorKind::Parameter);
    const ConormalSet s = conormal_derivatives(u, 1);
    EXPECT_EQ(kind_of([&] { sobolev_norm(s, false, 2, 2.0); }), ErrorKind::Parameter);
    EXPECT_EQ(kind_of([&] { conormal_derivatives(VectorField(ball_grid(8)), 1); }), ErrorKind::UnsupportedKind);
}

TEST(Identities, ResidualsVanishWithClosedFormVorticity) {
    const Grid3 g = Grid3::torus(16, kTwoPi);
    const oracle::Vector v = oracle::random_torus_field(21, 3);
    const VectorField u = v.sample(g, {Parity::None, Parity::None, Parity::None});
    const VectorField w = v.curl().sample(g, {Parity::None, Parity::None, Parity::None});
    const DzIdentityReport r = dz_identities(u, w);
    EXPECT_LT(r.max_residual(), 1e-10);
    EXPECT_TRUE(r.omega3_bound);
    EXPECT_TRUE(r.dz_bound);

    const Grid3 c = channel(16);
    const oracle::Vector cv = oracle::random_channel_field(22, 3, 3, M_PI);
    const DzIdentityReport rc = dz_identities(cv.sample(c, kVelocityParity), cv.curl().sample(c, kVorticityParity));
    EXPECT_LT(rc.max_residual(), 1e-10);
}

TEST(Identities, MismatchedVorticityIsRejected) {
    const Grid3 g = Grid3::torus(8, kTwoPi);
    const oracle::Vector v = oracle::random_torus_field(2, 2);
    const VectorField u = v.sample(g, {Parity::None, Parity::None, Parity::None});
    VectorField w = curl(u);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) w[c][i] *= 2.0;
    EXPECT_EQ(kind_of([&] { dz_identities(u, w); }), ErrorKind::Inconsistency);
}

TEST(Identities, FlatSplitAndConstants) {
    const Grid3 g = Grid3::torus(16, kTwoPi);
    const oracle::Vector v = oracle::random_torus_field(8, 3);
    const VectorField u = v.sample(g, {Parity::None, Parity::None, Parity::None});
    const FlatStretchSplit s = vortex_stretch_split_flat(u, curl(u));
    EXPECT_LT(s.residual, 1e-12 * std::max(1.0, s.linf_full));
    EXPECT_TRUE(s.bound_holds);
    EXPECT_DOUBLE_EQ(s.bound, kStretchC1 * s.linf_omega * s.linf_grad_h_u + kStretchC2 * s.linf_grad_h_u * s.linf_grad_h_u);

    const StretchSplit d = vortex_stretch_split(u, curl(u));
    ASSERT_TRUE(d.flat.has_value());
    EXPECT_FALSE(d.curved.has_value());
}

TEST(Hardy, MatchesDirectQuotient) {
    const double h = M_PI;
    const Grid3 g = channel(16, h);
    const oracle::Vector v = oracle::random_channel_field(13, 3, 3, h);
    const VectorField u = v.sample(g, kVelocityParity);
    const oracle::Weight w{true, h};
    double q = 0.0;
    double dz = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 x = g.point(i);
        const double d = v.c[2].d(2).eval(x);
        dz = std::max(dz, std::abs(d));
        const double phi = w.phi(x[2]);
        q = std::max(q, phi > 0 ? std::abs(v.c[2].eval(x) / phi) : std::abs(d));
    }
    const HardyReport r = hardy_quotient(u);
    EXPECT_NEAR(r.quotient, q, 1e-10 * std::max(1.0, q));
    EXPECT_NEAR(r.linf_dz_u3, dz, 1e-10 * std::max(1.0, dz));
    EXPECT_LE(r.ratio, 1.0 + 1e-9);
    EXPECT_LT(r.wall_trace, 1e-14);

    const CompatibleTriplet t = make_slab_triplet(g.domain(), 0.1 * h, 0.3 * h);
    const HardyReport local = hardy_quotient(u, &t.omega1);
    EXPECT_LE(local.quotient, r.quotient);
    EXPECT_LE(local.ratio, 1.0 + 1e-9);
}

TEST(Hardy, Errors) {
    const Grid3 g = channel(8);
    const VectorField bad = VectorField::sample(g, [](const Vec3&) { return Vec3{0.0, 0.0, 1.0}; }, kVelocityParity);
    EXPECT_EQ(kind_of([&] { hardy_quotient(bad); }), ErrorKind::InadmissibleField);
    const VectorField t(Grid3::torus(8, kTwoPi));
    EXPECT_EQ(kind_of([&] { hardy_quotient(t); }), ErrorKind::UnsupportedKind);
}

TEST(Chart, NormalDerivativesAreRebuiltFromVorticity) {
    const BallReconstruction rigid = ball_reconstruction(BallField::RigidRotation, 24);
    EXPECT_LT(rigid.max_error, 1e-10);
    EXPECT_GT(rigid.nodes, 0u);
    const BallReconstruction radial = ball_reconstruction(BallField::RadialStream, 32);
    EXPECT_LT(radial.max_error, 1e-6);
    EXPECT_TRUE(std::isfinite(radial.lemma_ratio));
    EXPECT_LT(radial.split_residual, 1e-10);
}

TEST(Chart, ContextErrors) {
    const Grid3 ball = ball_grid(12);
    const VectorField u = ball_field(ball, BallField::RigidRotation);
    const VectorField w = curl(u);
    const Chart c = ball_chart({0.0, 0.0, 1.0}, 1.0);
    EXPECT_EQ(kind_of([&] { vortex_stretch_split(u, w); }), ErrorKind::Context);
    const VectorField flat(Grid3::torus(8, kTwoPi));
    EXPECT_EQ(kind_of([&] { vortex_stretch_split(flat, flat, &c); }), ErrorKind::Context);
    EXPECT_EQ(kind_of([&] { normal_reconstruction(c, flat, flat); }), ErrorKind::Context);
    const StretchSplit s = vortex_stretch_split(u, w, &c);
    ASSERT_TRUE(s.curved.has_value());
    EXPECT_LT(s.residual, 1e-10 * std::max(1.0, s.linf_full));
}

TEST(Chart, BallNormsSumOverCapsAndInterior) {
    const Grid3 ball = ball_grid(16);
    const VectorField one = VectorField::sample(ball, [](const Vec3&) { return Vec3{1.0, 0.0, 0.0}; });
    const Atlas a = build_ball_atlas(6, 0.5);
    EXPECT_NEAR(norm_w_tan_ball(a, one, 0, kInfinity), 7.0, 1e-14);
    EXPECT_NEAR(norm_w_co_ball(a, one, 2, kInfinity), 7.0, 1e-9);
    const VectorField rot = ball_field(ball, BallField::RigidRotation);
    EXPECT_LE(norm_w_tan_ball(a, rot, 1, 2.0), norm_w_co_ball(a, rot, 1, 2.0) * (1 + 1e-14));
    EXPECT_EQ(kind_of([&] { norm_w_co_ball(a, rot, 3, 2.0); }), ErrorKind::UnimplementedOrder);
}

TEST(Examples, CurlDivergenceGradient) {
    const Grid3 g = Grid3::torus(32, kTwoPi);
    const VectorField shear = VectorField::sample(g, [](const Vec3& x) { return Vec3{std::sin(x[2]), 0.0, 0.0}; });
    const VectorField w = curl(shear);
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 x = g.point(i);
        e = std::max({e, std::abs(w[0][i]), std::abs(w[1][i] - std::cos(x[2])), std::abs(w[2][i])});
    }
    EXPECT_LT(e, 1e-10);
    const VectorField c = VectorField::sample(g, [](const Vec3&) { return Vec3{1.0, -2.0, 3.0}; });
    EXPECT_LT(curl(c).max_abs(), 1e-14);

    const Grid3 unit = Grid3::torus(32, 1.0);
    const ScalarField s = ScalarField::sample(unit, [](const Vec3& x) { return std::sin(2 * M_PI * x[0]); });
    const VectorField gs = gradient(s);
    double ge = 0.0;
    for (std::size_t i = 0; i < unit.size(); ++i)
        ge = std::max(ge, std::abs(gs[0][i] - 2 * M_PI * std::cos(2 * M_PI * unit.point(i)[0])));
    EXPECT_LT(ge, 1e-10);
    const ScalarField sq = ScalarField::sample(unit, [](const Vec3& x) { return x[0] * x[0]; });
    EXPECT_EQ(kind_of([&] { gradient(sq); }), ErrorKind::NonPeriodicSample);
}

TEST(Examples, CurlMatchesSixthOrderDifferences) {
    const Grid3 g = Grid3::torus(16, kTwoPi);
    const oracle::Vector v = oracle::random_torus_field(77, 3);
    const VectorField w = curl(v.sample(g, {Parity::None, Parity::None, Parity::None}));
    // Centered 6th-order stencil on the closed-form velocity.
    const double h = 1e-2;
    const double c[] = {3.0 / 4, -3.0 / 20, 1.0 / 60};
    auto d = [&](int comp, int axis, const Vec3& x) {
        double s = 0.0;
        for (int k = 1; k <= 3; ++k) {
            Vec3 a = x;
            Vec3 b = x;
            a[axis] += k * h;
            b[axis] -= k * h;
            s += c[k - 1] * (v.c[comp].eval(a) - v.c[comp].eval(b));
        }
        return s / h;
    };
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 x = g.point(i);
        const Vec3 fd{d(2, 1, x) - d(1, 2, x), d(0, 2, x) - d(2, 0, x), d(1, 0, x) - d(0, 1, x)};
        for (int k = 0; k < 3; ++k) e = std::max(e, std::abs(w[k][i] - fd[k]));
    }
    EXPECT_LT(e, 1e-6);
}

TEST(Examples, NormValues) {
    const Grid3 unit = Grid3::torus(32, 1.0);
    const VectorField u = VectorField::sample(unit, [](const Vec3& x) { return Vec3{std::sin(2 * M_PI * x[0]), 0.0, 0.0}; });
    EXPECT_NEAR(norm_w_tan(u, 1, kInfinity), 1.0 + 2 * M_PI, 1e-10);
    EXPECT_NEAR(norm_w_co(u, 1, kInfinity), norm_w_tan(u, 1, kInfinity), 1e-12);  // Z3 u = 0
    EXPECT_NEAR(norm_w_co(u, 2, 2.0), norm_w_tan(u, 2, 2.0), 1e-12);
    EXPECT_EQ(norm_w_tan(VectorField(unit), 2, kInfinity), 0.0);
    EXPECT_EQ(norm_w_co(VectorField(unit), 1, 2.0), 0.0);

    // Half-space with a finite-difference z axis: Z3 u1 = z / (1 + z)^3, largest at z = 1/2.
    const Axis per{AxisKind::Periodic, 4, 0.0, kTwoPi};
    const Grid3 half(DomainSpec::half_space(), {per, per, Axis{AxisKind::Bounded, 1001, 0.0, 10.0}});
    const VectorField hu = VectorField::sample(half, [](const Vec3& x) { return Vec3{x[2] / (1 + x[2]), 0.0, 0.0}; });
    const ConormalSet set = conormal_derivatives(hu, 1);
    double z3 = 0.0;
    for (std::size_t t = 0; t < set.indices.size(); ++t)
        if (set.indices[t].a3 == 1 && set.indices[t].order() == 1) z3 = set.terms[t].max_abs();
    EXPECT_NEAR(z3, 0.5 / std::pow(1.5, 3), 1e-8);
    EXPECT_NEAR(norm_w_co(hu, 1, kInfinity), 10.0 / 11.0 + z3, 1e-8);
}

TEST(Examples, IdentityEdgeCases) {
    const Grid3 g = Grid3::torus(16, kTwoPi);
    const VectorField shear = VectorField::sample(g, [](const Vec3& x) { return Vec3{std::sin(x[2]), 0.0, 0.0}; });
    const DzIdentityReport r = dz_identities(shear, curl(shear));
    EXPECT_NEAR(r.linf_dz_u, 1.0, 1e-12);
    EXPECT_NEAR(r.linf_omega, 1.0, 1e-12);
    EXPECT_NEAR(r.linf_grad_h_u, 0.0, 1e-14);
    EXPECT_TRUE(r.dz_bound);  // 1 <= 1 + 0, no slack

    const VectorField planar = VectorField::sample(
        g, [](const Vec3& x) { return Vec3{std::sin(x[0]) * std::cos(x[1]), -std::cos(x[0]) * std::sin(x[1]), 0.0}; });
    for (int c = 0; c < 3; ++c) EXPECT_LT(derivative(planar[c], 2).max_abs(), 1e-14);
    const FlatStretchSplit s = vortex_stretch_split_flat(planar, curl(planar));
    EXPECT_LT(s.linf_full, 1e-13);  // w parallel to e3, u independent of z
}

TEST(Examples, HardyOnTheUnitSlab) {
    const Grid3 g = Grid3::channel(8, 8, 65, kTwoPi, kTwoPi, 1.0);
    const VectorField u = VectorField::sample(
        g, [](const Vec3& x) { return Vec3{0.0, 0.0, std::sin(M_PI * x[2])}; }, kVelocityParity);
    const HardyReport r = hardy_quotient(u);
    EXPECT_NEAR(r.quotient, M_PI, 1e-6);
    EXPECT_NEAR(r.ratio, 1.0, 1e-6);
    EXPECT_EQ(hardy_quotient(VectorField(g, kVelocityParity)).quotient, 0.0);
}

TEST(Examples, ReconstructionOfSimpleFields) {
    const Grid3 ball = ball_grid(24);
    const Chart c = ball_chart({0.0, 0.0, 1.0}, 1.0);
    const VectorField zero(ball);
    const NormalReconstruction z = normal_reconstruction(c, zero, zero);
    EXPECT_EQ(z.max_error(), 0.0);
    EXPECT_EQ(z.linf_dn_u, 0.0);
    EXPECT_EQ(z.lemma_ratio, 0.0);
    EXPECT_LT(ball_reconstruction(BallField::RigidRotation, 48).max_error, 1e-8);
}
