#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eulerscope/domain.hpp"

namespace eulerscope {

/// Open interval along the weight axis; either end may be infinite.
struct Interval {
    double lo;
    double hi;
};

/// Axis-aligned region {x : z in union of open intervals}. On the torus the
/// intervals live in one period [lo, lo + L) and membership is taken modulo L.
struct Region {
    std::vector<Interval> intervals;

    bool contains(const DomainSpec& domain, double z) const;
    /// Grid-node membership: as contains(), but a wall node also belongs to
    /// an interval that ends on that wall.
    bool contains_node(const DomainSpec& domain, double z) const;
};

/// C^2 quintic step: 0 for t <= 0, 1 for t >= 1, t^3 (10 - 15 t + 6 t^2) between.
double smooth_step(double t);
double smooth_step_derivative(double t);

/// (Omega1, Omega2, chi) with chi depending (by contract) on z only.
struct CompatibleTriplet {
    Region omega1;
    Region omega2;
    std::function<double(const Vec3&)> chi;
    std::function<double(const Vec3&)> chi_dz;
    Interval transition{0.0, 0.0};
};

/// Slab triplet with transition on (a, b):
///   half-space      Omega1 = (0, b), Omega2 = (a, inf), chi = 1 near the wall;
///   slab channels   the same construction mirrored about the mid-plane;
///   whole space     Omega1 = {|z| > a}, Omega2 = {|z| < b}, chi = 0 near z = 0;
///   torus           as whole space with |z| the periodic distance to z = 0.
CompatibleTriplet make_slab_triplet(const DomainSpec& domain, double a, double b);

struct TripletValidation {
    bool separated = false;          // (i)  d(Omega1^c, Omega2^c) > 0
    double complement_gap = 0.0;
    bool cutoff_ok = false;          // (ii) chi = 1 on Omega2^c, 0 on Omega1^c, d1 chi = d2 chi = 0
    double max_chi_error = 0.0;
    double max_tangential_slope = 0.0;
    bool plane_check_applies = false;
    bool away_from_plane = true;     // (iii) d(Omega1, {z = 0}) > 0 on whole space / torus
    double plane_distance = 0.0;
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

TripletValidation validate_triplet(const CompatibleTriplet& triplet, const DomainSpec& domain);

}  // namespace eulerscope
