#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "eulerscope/chart.hpp"
#include "eulerscope/domain.hpp"
#include "eulerscope/error.hpp"
#include "eulerscope/triplet.hpp"

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

double fd(const std::function<double(double)>& f, double x, double h = 1e-5) { return (f(x + h) - f(x - h)) / (2 * h); }

}  // namespace

TEST(Domain, KindNamesRoundTrip) {
    for (DomainKind k : {DomainKind::HalfSpace, DomainKind::WholeSpace, DomainKind::Torus3,
                         DomainKind::SlabChannelPeriodic, DomainKind::SlabChannelInfinite, DomainKind::Ball})
        EXPECT_EQ(domain_kind_from_string(to_string(k)), k);
    EXPECT_THROW(domain_kind_from_string("moebius"), Error);
}

TEST(Domain, Membership) {
    EXPECT_TRUE(DomainSpec::half_space().contains({3.0, -2.0, 0.0}));
    EXPECT_FALSE(DomainSpec::half_space().contains({0.0, 0.0, -1e-6}));
    EXPECT_TRUE(DomainSpec::torus3(1.0).contains({17.0, -3.5, 99.0}));
    EXPECT_TRUE(DomainSpec::ball().contains({0.6, 0.8, 0.0}));
    EXPECT_FALSE(DomainSpec::ball().contains({0.6, 0.8, 0.01}));
    EXPECT_FALSE(DomainSpec::slab_channel_infinite(2.0).contains({0.0, 0.0, 2.5}));
    EXPECT_TRUE(DomainSpec::whole_space().has_boundary() == false);
    EXPECT_TRUE(DomainSpec::slab_channel_periodic(1.0, 1.0, 1.0).boundary_axes().test(2));
}

TEST(Domain, WeightVanishesOnBoundaryAndMatchesDerivative) {
    const DomainSpec half = DomainSpec::half_space();
    EXPECT_EQ(weight_phi(half, {0.0, 0.0, 0.0}), 0.0);
    EXPECT_GT(weight_phi(half, {0.0, 0.0, 0.3}), 0.0);

    const DomainSpec slab = DomainSpec::slab_channel_periodic(1.0, 1.0, 2.0);
    EXPECT_EQ(weight_phi(slab, {0.0, 0.0, 0.0}), 0.0);
    EXPECT_EQ(weight_phi(slab, {0.0, 0.0, 2.0}), 0.0);
    EXPECT_DOUBLE_EQ(weight_phi(slab, {0.0, 0.0, 0.5}), 0.5);
    EXPECT_EQ(weight_profile(slab, 1.0).dphi, 0.0);  // crest convention

    const DomainSpec torus = DomainSpec::torus3(kTwoPi);
    EXPECT_NEAR(weight_phi(torus, {0.0, 0.0, 0.5 * kTwoPi}), 0.0, 1e-15);
    EXPECT_LT(weight_phi(torus, {0.0, 0.0, 4.0}, WeightSign::Signed), 0.0);
    EXPECT_GT(weight_phi(torus, {0.0, 0.0, 4.0}, WeightSign::Absolute), 0.0);

    for (const DomainSpec& d : {half, slab, torus, DomainSpec::whole_space()})
        for (double z : {0.13, 0.71, 1.37}) {
            auto phi = [&](double s) { return weight_profile(d, s, WeightSign::Signed).phi; };
            EXPECT_NEAR(weight_profile(d, z, WeightSign::Signed).dphi, fd(phi, z), 1e-8) << to_string(d.kind());
        }
    EXPECT_DOUBLE_EQ(weight_phi(DomainSpec::ball(), {0.3, 0.4, 0.0}), 0.5);  // distance to the sphere
    EXPECT_THROW(weight_profile(DomainSpec::ball(), 0.5), Error);
    EXPECT_THROW(weight_phi(half, {0.0, 0.0, -1.0}), Error);
}

TEST(Domain, ConormalFrameScalesTheNormalDerivative) {
    const DomainSpec half = DomainSpec::half_space();
    const ConormalFrame f = conormal_frame(half);
    const Mat3 c = f.coefficients({1.0, 2.0, 0.5});
    EXPECT_EQ(c[0][0], 1.0);
    EXPECT_EQ(c[1][1], 1.0);
    EXPECT_DOUBLE_EQ(c[2][2], weight_phi(half, {1.0, 2.0, 0.5}));
    EXPECT_EQ(c[0][2], 0.0);
    EXPECT_THROW(conormal_frame(DomainSpec::ball()), Error);
}

TEST(Triplet, SmoothStep) {
    EXPECT_EQ(smooth_step(-1.0), 0.0);
    EXPECT_EQ(smooth_step(2.0), 1.0);
    EXPECT_DOUBLE_EQ(smooth_step(0.5), 0.5);
    for (double t : {0.1, 0.4, 0.77}) EXPECT_NEAR(smooth_step_derivative(t), fd(smooth_step, t), 1e-8);
}

TEST(Triplet, SlabTripletsValidateOnEveryFlatDomain) {
    const DomainSpec domains[] = {DomainSpec::half_space(), DomainSpec::slab_channel_periodic(kTwoPi, kTwoPi, 1.0),
                                  DomainSpec::slab_channel_infinite(1.0), DomainSpec::whole_space(),
                                  DomainSpec::torus3(kTwoPi)};
    for (const auto& d : domains) {
        const CompatibleTriplet t = make_slab_triplet(d, 0.1, 0.3);
        const TripletValidation v = validate_triplet(t, d);
        EXPECT_TRUE(v.pass()) << to_string(d.kind()) << ": " << (v.failures.empty() ? "" : v.failures.front());
        EXPECT_GT(v.complement_gap, 0.0);
        for (double z : {0.05, 0.15, 0.2, 0.29, 0.6}) {
            auto chi = [&](double s) { return t.chi({0.3, 0.1, s}); };
            EXPECT_NEAR(t.chi_dz({0.3, 0.1, z}), fd(chi, z), 1e-7) << to_string(d.kind()) << " z=" << z;
        }
    }
}

TEST(Triplet, HalfSpaceCutoffValues) {
    const DomainSpec d = DomainSpec::half_space();
    const CompatibleTriplet t = make_slab_triplet(d, 1.0, 2.0);
    EXPECT_EQ(t.chi({0.0, 0.0, 0.5}), 1.0);  // Omega2^c = (0, 1]
    EXPECT_EQ(t.chi({0.0, 0.0, 3.0}), 0.0);  // Omega1^c = [2, inf)
    EXPECT_TRUE(t.omega1.contains(d, 1.5));
    EXPECT_FALSE(t.omega1.contains(d, 2.5));
    EXPECT_TRUE(t.omega2.contains(d, 1.5));
    EXPECT_FALSE(t.omega2.contains(d, 0.5));
}

TEST(Triplet, ConstructionErrors) {
    EXPECT_EQ(kind_of([] { make_slab_triplet(DomainSpec::half_space(), 2.0, 1.0); }), ErrorKind::InvalidInterval);
    EXPECT_EQ(kind_of([] { make_slab_triplet(DomainSpec::half_space(), 0.0, 1.0); }), ErrorKind::InvalidInterval);
    EXPECT_EQ(kind_of([] { make_slab_triplet(DomainSpec::whole_space(), 0.0, 1.0); }), ErrorKind::InvalidTriplet);
    EXPECT_EQ(kind_of([] { make_slab_triplet(DomainSpec::slab_channel_infinite(1.0), 0.1, 0.6); }),
              ErrorKind::InvalidInterval);
    EXPECT_EQ(kind_of([] { make_slab_triplet(DomainSpec::ball(), 0.1, 0.2); }), ErrorKind::UnsupportedKind);
}

TEST(Triplet, ValidationNamesTheBrokenCondition) {
    const DomainSpec half = DomainSpec::half_space();
    CompatibleTriplet gap = make_slab_triplet(half, 0.5, 1.0);
    gap.omega1 = {{{0.0, 1.0}}};
    gap.omega2 = {{{1.0, INFINITY}}};
    const auto v1 = validate_triplet(gap, half);
    ASSERT_FALSE(v1.pass());
    EXPECT_EQ(v1.failures.front().rfind("(i)", 0), 0u);
    EXPECT_FALSE(v1.separated);

    CompatibleTriplet bent = make_slab_triplet(half, 0.5, 1.0);
    auto base = bent.chi;
    bent.chi = [base](const Vec3& x) { return base(x) + 0.01 * std::sin(x[0]); };
    const auto v2 = validate_triplet(bent, half);
    EXPECT_FALSE(v2.cutoff_ok);
    EXPECT_GT(v2.max_tangential_slope, 1e-3);

    const DomainSpec whole = DomainSpec::whole_space();
    CompatibleTriplet touch = make_slab_triplet(whole, 0.5, 1.0);
    touch.omega1 = {{{-INFINITY, 0.0}, {0.0, INFINITY}}};
    touch.chi = [](const Vec3& x) { return smooth_step(std::abs(x[2]) / 1.0); };
    const auto v3 = validate_triplet(touch, whole);
    EXPECT_TRUE(v3.plane_check_applies);
    EXPECT_FALSE(v3.away_from_plane);

    CompatibleTriplet none = make_slab_triplet(half, 0.5, 1.0);
    none.chi = nullptr;
    EXPECT_FALSE(validate_triplet(none, half).pass());
}

TEST(Triplet, WallNodesBelongToRegionsEndingOnTheWall) {
    const DomainSpec slab = DomainSpec::slab_channel_periodic(1.0, 1.0, 1.0);
    const Region r{{{0.0, 0.3}}};
    EXPECT_FALSE(r.contains(slab, 0.0));
    EXPECT_TRUE(r.contains_node(slab, 0.0));
    EXPECT_FALSE(r.contains_node(slab, 1.0));
    const DomainSpec torus = DomainSpec::torus3(1.0);
    const Region wrap{{{-0.2, 0.2}}};
    EXPECT_TRUE(wrap.contains(torus, 0.9));
    EXPECT_FALSE(wrap.contains(torus, 0.5));
}

TEST(Chart, FrameIsOrthonormalWithRadialNormal) {
    const Chart c = ball_chart({0.0, 0.0, 1.0}, 1.0);
    EXPECT_DOUBLE_EQ(c.psi(0.0, 0.0), 1.0);
    for (const Vec3& x : {Vec3{0.1, 0.2, 0.9}, Vec3{-0.3, 0.1, 0.7}, Vec3{0.0, 0.0, 0.6}}) {
        const Mat3 g = c.frame(x);
        const Mat3 gtg = matmul(transpose(g), g);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) EXPECT_NEAR(gtg[i][k], i == k ? 1.0 : 0.0, 1e-14);
        const double r = norm(x);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(g[i][2], x[i] / r, 1e-14);
        EXPECT_NEAR(c.phi(x), 1.0 - r, 1e-15);
    }
}

TEST(Chart, FrameGradientMatchesDifferences) {
    const Chart c = ball_chart({1.0, 1.0, 0.0}, 1.0);
    const Vec3 x{0.6, 0.5, 0.2};
    const auto dg = c.frame_gradient(x);
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
        Vec3 a = x;
        Vec3 b = x;
        a[k] += h;
        b[k] -= h;
        const Mat3 ga = c.frame(a);
        const Mat3 gb = c.frame(b);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) EXPECT_NEAR(dg[k][i][j], (ga[i][j] - gb[i][j]) / (2 * h), 1e-7);
    }
}

TEST(Chart, Containment) {
    const Chart c = ball_chart({0.0, 0.0, 1.0}, 0.8, 0.5);
    EXPECT_TRUE(c.contains({0.0, 0.0, 0.9}));
    EXPECT_FALSE(c.contains({0.0, 0.0, 0.4}));   // inside the inner radius
    EXPECT_FALSE(c.contains({0.0, 0.0, -0.9}));  // opposite cap
    EXPECT_FALSE(c.contains({0.0, 0.0, 1.1}));   // outside the ball
}

TEST(Atlas, PartitionOfUnityAndCoverage) {
    const Atlas a = build_ball_atlas(6, 0.5);
    EXPECT_EQ(a.charts().size(), 6u);
    for (const Vec3& x : {Vec3{0.1, 0.0, 0.0}, Vec3{0.5, 0.5, 0.5}, Vec3{0.0, -0.99, 0.0}, Vec3{0.57, 0.57, 0.57}}) {
        EXPECT_NEAR(a.partition_sum(x), 1.0, 1e-15);
        if (a.shell_cutoff(x) > 0.0) {
            EXPECT_FALSE(a.caps_containing(x).empty());
        }
        if (a.interior_cutoff(x) > 0.0) {
            EXPECT_TRUE(a.in_interior_patch(x));
        }
        // Radial partition: no tangential derivative.
        const Vec3 g = a.shell_cutoff_gradient(x);
        const Vec3 t = cross(g, x);
        EXPECT_NEAR(norm(t), 0.0, 1e-12);
    }
    EXPECT_THROW(build_ball_atlas(1, 0.5), Error);
}

TEST(Examples, WeightValuesFromTheDefinitions) {
    EXPECT_DOUBLE_EQ(weight_phi(DomainSpec::half_space(), {0.0, 0.0, 1.0}), 0.5);
    EXPECT_EQ(weight_phi(DomainSpec::slab_channel_periodic(1.0, 1.0, 1.0), {0.2, 0.3, 0.0}), 0.0);
    EXPECT_NEAR(weight_phi(DomainSpec::torus3(1.0), {0.0, 0.0, 0.25}), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(weight_phi(DomainSpec::whole_space(), {0.0, 0.0, -1.0}), -0.5);
    EXPECT_DOUBLE_EQ(weight_phi(DomainSpec::whole_space(), {0.0, 0.0, -1.0}, WeightSign::Absolute), 0.5);
    EXPECT_EQ(kind_of([] { weight_phi(DomainSpec::slab_channel_periodic(1.0, 1.0, 1.0), {0.0, 0.0, 1.5}); }),
              ErrorKind::DomainMismatch);
}

TEST(Examples, ConormalCoefficients) {
    const Mat3 h = conormal_frame(DomainSpec::half_space()).coefficients({0.0, 0.0, 3.0});
    EXPECT_EQ(h[0][0], 1.0);
    EXPECT_EQ(h[1][1], 1.0);
    EXPECT_DOUBLE_EQ(h[2][2], 0.75);
    EXPECT_NEAR(conormal_frame(DomainSpec::torus3(1.0)).coefficients({0.0, 0.0, 0.125})[2][2],
                std::sin(2 * M_PI * 0.125), 1e-15);
    EXPECT_EQ(conormal_frame(DomainSpec::whole_space()).coefficients({1.0, 1.0, 0.0})[2][2], 0.0);
    EXPECT_EQ(kind_of([] { conormal_frame(DomainSpec::ball()); }), ErrorKind::UnsupportedKind);
}

TEST(Examples, HalfSpaceAndSlabTriplets) {
    const DomainSpec half = DomainSpec::half_space();
    const CompatibleTriplet t = make_slab_triplet(half, 1.0, 2.0);
    const TripletValidation v = validate_triplet(t, half);
    EXPECT_TRUE(v.pass());
    EXPECT_NEAR(v.complement_gap, 1.0, 1e-12);
    EXPECT_EQ(kind_of([&] { make_slab_triplet(half, 1.0, 1.0); }), ErrorKind::InvalidInterval);

    const DomainSpec slab = DomainSpec::slab_channel_periodic(1.0, 1.0, 1.0);
    const CompatibleTriplet s = make_slab_triplet(slab, 0.1, 0.2);
    EXPECT_TRUE(validate_triplet(s, slab).pass());
    for (double z = 0.0; z <= 0.5; z += 0.01) {
        EXPECT_NEAR(s.chi({0.0, 0.0, z}), s.chi({0.0, 0.0, 1.0 - z}), 1e-14);
        EXPECT_NEAR(s.chi_dz({0.0, 0.0, z}), -s.chi_dz({0.0, 0.0, 1.0 - z}), 1e-12);
    }
}

TEST(Examples, ChartPoleAndAtlasPartition) {
    const Chart c = ball_chart({0.0, 0.0, 1.0}, 1.0);
    const Mat3 g = c.frame({0.0, 0.0, 1.0});
    EXPECT_NEAR(g[0][2], 0.0, 1e-15);
    EXPECT_NEAR(g[1][2], 0.0, 1e-15);
    EXPECT_NEAR(g[2][2], 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(c.psi(0.0, 0.0), 1.0);
    EXPECT_NEAR(c.phi({0.0, 0.0, 0.9}), 0.1, 1e-15);
    EXPECT_EQ(kind_of([] { ball_chart({0.0, 0.0, 1.0}, 1.6); }), ErrorKind::GraphFailure);

    EXPECT_THROW(build_ball_atlas(6, 0.0), Error);
    const Atlas a = build_ball_atlas(6, 0.5);
    double worst = 0.0;
    double angular = 0.0;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j)
            for (int k = 0; k < 32; ++k) {
                const Vec3 x{-1.0 + 2.0 * i / 31, -1.0 + 2.0 * j / 31, -1.0 + 2.0 * k / 31};
                if (norm(x) > 1.0) continue;
                worst = std::max(worst, std::abs(a.partition_sum(x) - 1.0));
                angular = std::max(angular, norm(cross(a.shell_cutoff_gradient(x), x)));
            }
    EXPECT_LT(worst, 1e-10);
    EXPECT_LT(angular, 1e-12);
}
