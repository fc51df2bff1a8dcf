#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eulerscope/chart_calculus.hpp"
#include "eulerscope/triplet.hpp"

namespace eulerscope {

/// One row of a verification table: pass iff value <= limit.
struct CheckResult {
    std::string suite;
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    std::size_t n = 32;          // torus nodes per axis, ball nodes per axis
    std::size_t channel_n = 0;   // channel periodic nodes (0: same as n); walls get channel_n + 1
    std::uint64_t seed = 7;
    int fields = 4;              // random fields per geometry
    int frame_samples = 10000;
    int random_triplets = 50;
};

inline constexpr std::size_t kVerifyMinN = 8;

/// identities, constants, chart, hardy, triplet.
const std::vector<std::string>& verify_suites();

/// Runs one suite or "all". Errors: Parameter for an unknown suite or n < 8
/// (or odd n).
std::vector<CheckResult> run_verify(const std::string& suite, const VerifyOptions& options);

/// Fixed-width table, one line per check.
std::string format_checks(const std::vector<CheckResult>& checks);

// Building blocks shared with the tests ------------------------------------

/// Test fields on the ball grid [-1, 1]^3 (finite differences):
///   rigid rotation  u = e3 x x
///   radial stream   u = (x1 cos x3, x2 cos x3, -2 sin x3)
enum class BallField { RigidRotation, RadialStream };

Grid3 ball_grid(std::size_t n);
VectorField ball_field(const Grid3& grid, BallField f);
JacobianFn ball_field_jacobian(BallField f);

/// Max over the six caps of the reconstruction error against the exact Jacobian.
struct BallReconstruction {
    double max_error = 0.0;
    double lemma_ratio = 0.0;
    double split_residual = 0.0;
    std::size_t nodes = 0;
};
BallReconstruction ball_reconstruction(BallField f, std::size_t n);

/// max |g^T g - I| over `samples` random points of the boundary caps.
double frame_orthonormality(int samples, std::uint64_t seed);

/// Pointwise check of |w . grad u| <= C1 |w| G + C2 G^2 on random traceless
/// gradients; returns the largest observed ratio lhs / rhs.
double stretch_constant_ratio(int samples, std::uint64_t seed, double c1, double c2);

struct TripletCase {
    std::string name;
    DomainSpec domain;
    CompatibleTriplet triplet;
    std::string expected;  // "" for a valid triplet, else "(i)", "(ii)" or "(iii)"
};

/// `count` valid slab triplets with random (a, b), cycling through the flat domains.
std::vector<TripletCase> random_triplets(int count, std::uint64_t seed);
/// Ten triplets that each break one condition.
std::vector<TripletCase> broken_triplets();

}  // namespace eulerscope
