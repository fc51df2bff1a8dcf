#pragma once

#include <vector>

#include "eulerscope/vec3.hpp"

namespace eulerscope {

/// Boundary chart of the unit ball: a spherical cap around `axis`, seen as
/// the graph z' = psi(x1', x2') = sqrt(1 - x1'^2 - x2'^2) in rotated
/// coordinates, together with the frame (tau, tau_bar, n).
///
/// n(x) = x / |x| extends the unit normal radially; tau is the normalized
/// projection of the fixed tangent axis e1' onto the plane orthogonal to n,
/// and tau_bar = n x tau. The frame is singular only where n = +-e1', which
/// lies outside every cap of angular radius below pi/2.
class Chart {
public:
    Chart(const Vec3& axis, double angular_radius, double inner_radius);

    const Vec3& axis() const { return axis_; }
    double angular_radius() const { return angular_radius_; }
    double inner_radius() const { return inner_radius_; }

    /// Rotation taking local chart coordinates to ambient ones (columns e1', e2', axis).
    const Mat3& rotation() const { return rotation_; }

    /// Boundary height over the tangent plane in local coordinates.
    double psi(double x1, double x2) const;

    /// g with columns (tau, tau_bar, n): d_i = g_ij d_j^psi and g^{-1} = g^T.
    Mat3 frame(const Vec3& x) const;

    /// d_k of the frame: result[k][i][j] = d g_ij / d x_k.
    std::array<Mat3, 3> frame_gradient(const Vec3& x) const;

    /// Distance to the unit sphere.
    double phi(const Vec3& x) const;

    /// x lies in the chart neighbourhood: inside the closed ball, at least
    /// inner_radius from the origin, and within the cap's angular radius.
    bool contains(const Vec3& x) const;

private:
    Vec3 axis_;
    double angular_radius_;
    double inner_radius_;
    Mat3 rotation_;
};

Chart ball_chart(const Vec3& cap_axis, double angular_radius, double inner_radius = 0.5);

/// Boundary caps plus the interior patch U0 = B(0, transition_radius), with
/// the radial partition {rho, 1 - rho}: rho = 0 for |x| <= interior_radius,
/// rho = 1 for |x| >= transition_radius. The boundary shell carries rho and
/// every cap lies inside it, so the partition has no tangential derivatives.
class Atlas {
public:
    Atlas(std::vector<Chart> charts, double interior_radius, double transition_radius);

    const std::vector<Chart>& charts() const { return charts_; }
    double interior_radius() const { return interior_radius_; }
    double transition_radius() const { return transition_radius_; }

    double shell_cutoff(const Vec3& x) const;
    double interior_cutoff(const Vec3& x) const;
    Vec3 shell_cutoff_gradient(const Vec3& x) const;
    double partition_sum(const Vec3& x) const { return shell_cutoff(x) + interior_cutoff(x); }

    bool in_interior_patch(const Vec3& x) const;
    /// Index of every cap containing x (empty when none does).
    std::vector<int> caps_containing(const Vec3& x) const;

private:
    std::vector<Chart> charts_;
    double interior_radius_;
    double transition_radius_;
};

/// n_caps = 6 places caps on +-e_i; other counts use a Fibonacci lattice.
/// Fails with a coverage error when the caps cannot cover the sphere with
/// angular radius below pi/2.
Atlas build_ball_atlas(int n_caps, double interior_radius);

}  // namespace eulerscope
