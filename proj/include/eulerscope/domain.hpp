#pragma once

#include <array>
#include <bitset>
#include <limits>
#include <string>

#include "eulerscope/vec3.hpp"

namespace eulerscope {

enum class DomainKind {
    HalfSpace,
    WholeSpace,
    Torus3,
    SlabChannelPeriodic,
    SlabChannelInfinite,
    Ball,
};

const char* to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);

/// One coordinate direction of a domain. Unbounded directions use infinite
/// bounds; periodic directions store their period as hi - lo.
struct AxisExtent {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool periodic = false;

    double length() const { return hi - lo; }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

/// Catalogue entry for the spatial domain. The weight axis (the one carrying
/// the boundary or, on the torus and whole space, the distinguished plane
/// z = 0) is always axis 2.
class DomainSpec {
public:
    static DomainSpec half_space();
    static DomainSpec whole_space();
    static DomainSpec torus3(double period = 1.0);
    static DomainSpec torus3(double lx, double ly, double lz);
    static DomainSpec slab_channel_periodic(double lx, double ly, double height = 1.0);
    static DomainSpec slab_channel_infinite(double height = 1.0);
    static DomainSpec ball();

    DomainKind kind() const { return kind_; }
    const AxisExtent& extent(int axis) const { return extents_[axis]; }
    const std::bitset<3>& boundary_axes() const { return boundary_axes_; }
    bool has_boundary() const { return boundary_axes_.any(); }
    bool is_flat() const { return kind_ != DomainKind::Ball; }

    /// Closed-domain membership (boundary points included). Periodic axes
    /// accept every coordinate.
    bool contains(const Vec3& x, double tol = 1e-12) const;

private:
    DomainSpec(DomainKind kind, std::array<AxisExtent, 3> extents, std::bitset<3> boundary_axes);

    DomainKind kind_;
    std::array<AxisExtent, 3> extents_;
    std::bitset<3> boundary_axes_;
};

enum class WeightSign { Signed, Absolute };

/// Boundary-distance weight phi. On the whole space and the torus the weight
/// is signed as written (negative below z = 0, resp. on the upper half
/// period); WeightSign::Absolute returns |phi|, which is what all norms use.
double weight_phi(const DomainSpec& domain, const Vec3& x, WeightSign sign = WeightSign::Signed);

/// phi and d(phi)/dz for flat domains, evaluated at height z. The absolute
/// variant returns (|phi|, d|phi|/dz); the product phi * phi' is the same for
/// both. At the crest of the slab weight min(z, h - z) the derivative is set
/// to 0 (mean of the one-sided values).
struct WeightValue {
    double phi;
    double dphi;
};
WeightValue weight_profile(const DomainSpec& domain, double z, WeightSign sign = WeightSign::Absolute);

/// First-order operator Z = sum_j c_j(x) d_j, described by its coefficients.
struct ConormalFrame {
    DomainSpec domain;
    WeightSign sign = WeightSign::Signed;

    /// Row i holds the coefficients of Z_{i+1}: Z1 = d1, Z2 = d2, Z3 = phi dz.
    Mat3 coefficients(const Vec3& x) const;
};

ConormalFrame conormal_frame(const DomainSpec& domain, WeightSign sign = WeightSign::Signed);

}  // namespace eulerscope
