#include "eulerscope/chart.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eulerscope/error.hpp"
#include "eulerscope/triplet.hpp"

namespace eulerscope {

namespace {

Mat3 rotation_for_axis(const Vec3& axis) {
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(axis[i]) < std::abs(axis[k])) k = i;
    Vec3 v{0.0, 0.0, 0.0};
    v[k] = 1.0;
    const Vec3 e1 = normalized(v - dot(v, axis) * axis);
    const Vec3 e2 = cross(axis, e1);
    Mat3 r{};
    for (int i = 0; i < 3; ++i) {
        r[i][0] = e1[i];
        r[i][1] = e2[i];
        r[i][2] = axis[i];
    }
    return r;
}

std::vector<Vec3> fibonacci_sphere(int n) {
    std::vector<Vec3> pts;
    pts.reserve(n);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        pts.push_back({r * std::cos(golden * i), r * std::sin(golden * i), z});
    }
    return pts;
}

double angle_between(const Vec3& a, const Vec3& b) {
    return std::acos(std::clamp(dot(a, b) / (norm(a) * norm(b)), -1.0, 1.0));
}

}  // namespace

Chart::Chart(const Vec3& axis, double angular_radius, double inner_radius)
    : axis_(normalized(axis)),
      angular_radius_(angular_radius),
      inner_radius_(inner_radius),
      rotation_(rotation_for_axis(axis_)) {}

double Chart::psi(double x1, double x2) const {
    const double s = 1.0 - x1 * x1 - x2 * x2;
    if (s < 0.0) throw Error(ErrorKind::DomainMismatch, "point outside the chart's tangent disc");
    return std::sqrt(s);
}

Mat3 Chart::frame(const Vec3& x) const {
    const double r = norm(x);
    if (r == 0.0) throw Error(ErrorKind::Conditioning, "radial frame undefined at the origin");
    const Vec3 n = (1.0 / r) * x;
    const Vec3 a = column(rotation_, 0);
    const Vec3 v = a - dot(a, n) * n;
    const double vn = norm(v);
    if (vn < 1e-8) throw Error(ErrorKind::Conditioning, "tangent axis parallel to the normal");
    const Vec3 tau = (1.0 / vn) * v;
    const Vec3 tau_bar = cross(n, tau);
    Mat3 g{};
    for (int i = 0; i < 3; ++i) {
        g[i][0] = tau[i];
        g[i][1] = tau_bar[i];
        g[i][2] = n[i];
    }
    return g;
}

std::array<Mat3, 3> Chart::frame_gradient(const Vec3& x) const {
    const double r = norm(x);
    if (r == 0.0) throw Error(ErrorKind::Conditioning, "radial frame undefined at the origin");
    const Vec3 n = (1.0 / r) * x;
    const Vec3 a = column(rotation_, 0);
    const double an = dot(a, n);
    const Vec3 v = a - an * n;
    const double vn = norm(v);
    if (vn < 1e-8) throw Error(ErrorKind::Conditioning, "tangent axis parallel to the normal");
    const Vec3 tau = (1.0 / vn) * v;

    std::array<Mat3, 3> out{};
    for (int k = 0; k < 3; ++k) {
        Vec3 dn{};
        for (int i = 0; i < 3; ++i) dn[i] = ((i == k ? 1.0 : 0.0) - n[i] * n[k]) / r;
        const Vec3 dv = (-dot(a, dn)) * n - an * dn;
        const Vec3 dtau = (1.0 / vn) * (dv - dot(tau, dv) * tau);
        const Vec3 dtau_bar = cross(dn, tau) + cross(n, dtau);
        for (int i = 0; i < 3; ++i) {
            out[k][i][0] = dtau[i];
            out[k][i][1] = dtau_bar[i];
            out[k][i][2] = dn[i];
        }
    }
    return out;
}

double Chart::phi(const Vec3& x) const { return std::max(0.0, 1.0 - norm(x)); }

bool Chart::contains(const Vec3& x) const {
    const double r = norm(x);
    if (r > 1.0 + 1e-12 || r < inner_radius_ || r == 0.0) return false;
    return angle_between(x, axis_) <= angular_radius_;
}

Chart ball_chart(const Vec3& cap_axis, double angular_radius, double inner_radius) {
    if (!(norm(cap_axis) > 0.0)) throw Error(ErrorKind::Parameter, "cap axis must be nonzero");
    if (!(angular_radius > 0.0)) throw Error(ErrorKind::Parameter, "cap angular radius must be positive");
    if (!(angular_radius < 0.5 * std::numbers::pi)) {
        std::ostringstream os;
        os << "cap of angular radius " << angular_radius << " is not a graph over its tangent plane";
        throw Error(ErrorKind::GraphFailure, os.str());
    }
    if (!(inner_radius > 0.0 && inner_radius < 1.0))
        throw Error(ErrorKind::Parameter, "chart inner radius must lie in (0, 1)");
    return Chart(cap_axis, angular_radius, inner_radius);
}

Atlas::Atlas(std::vector<Chart> charts, double interior_radius, double transition_radius)
    : charts_(std::move(charts)), interior_radius_(interior_radius), transition_radius_(transition_radius) {}

double Atlas::shell_cutoff(const Vec3& x) const {
    return smooth_step((norm(x) - interior_radius_) / (transition_radius_ - interior_radius_));
}

double Atlas::interior_cutoff(const Vec3& x) const { return 1.0 - shell_cutoff(x); }

Vec3 Atlas::shell_cutoff_gradient(const Vec3& x) const {
    const double r = norm(x);
    if (r == 0.0) return {0.0, 0.0, 0.0};
    const double w = transition_radius_ - interior_radius_;
    const double s = smooth_step_derivative((r - interior_radius_) / w) / w;
    return (s / r) * x;
}

bool Atlas::in_interior_patch(const Vec3& x) const { return norm(x) < transition_radius_; }

std::vector<int> Atlas::caps_containing(const Vec3& x) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < charts_.size(); ++i)
        if (charts_[i].contains(x)) out.push_back(static_cast<int>(i));
    return out;
}

Atlas build_ball_atlas(int n_caps, double interior_radius) {
    if (!(interior_radius > 0.0 && interior_radius < 1.0))
        throw Error(ErrorKind::Parameter, "interior radius must lie in (0, 1)");
    if (n_caps < 1) throw Error(ErrorKind::Coverage, "at least one boundary cap is required");

    std::vector<Vec3> axes;
    if (n_caps == 6) {
        axes = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    } else {
        axes = fibonacci_sphere(n_caps);
    }

    double cover = 0.0;
    for (const auto& p : fibonacci_sphere(20000)) {
        double best = std::numbers::pi;
        for (const auto& a : axes) best = std::min(best, angle_between(p, a));
        cover = std::max(cover, best);
    }
    const double radius = 1.08 * cover + 0.02;
    if (!(radius < 0.5 * std::numbers::pi)) {
        std::ostringstream os;
        os << n_caps << " caps leave part of the boundary shell uncovered (need angular radius " << radius
           << " >= pi/2)";
        throw Error(ErrorKind::Coverage, os.str());
    }

    std::vector<Chart> charts;
    for (const auto& a : axes) charts.push_back(ball_chart(a, radius, interior_radius));
    const double transition = interior_radius + 0.5 * (1.0 - interior_radius);
    return Atlas(std::move(charts), interior_radius, transition);
}

}  // namespace eulerscope
