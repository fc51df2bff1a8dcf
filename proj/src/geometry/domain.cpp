#include "eulerscope/domain.hpp"

#include <cmath>
#include <numbers>

#include "eulerscope/error.hpp"

namespace eulerscope {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DomainMismatch: return "domain-mismatch";
        case ErrorKind::UnsupportedKind: return "unsupported-kind";
        case ErrorKind::InvalidInterval: return "invalid-interval";
        case ErrorKind::InvalidTriplet: return "invalid-triplet";
        case ErrorKind::GraphFailure: return "graph-failure";
        case ErrorKind::Coverage: return "coverage";
        case ErrorKind::UnsupportedGrid: return "unsupported-grid";
        case ErrorKind::NonPeriodicSample: return "non-periodic-sample";
        case ErrorKind::UnimplementedOrder: return "unimplemented-order";
        case ErrorKind::Inconsistency: return "inconsistency";
        case ErrorKind::Context: return "context";
        case ErrorKind::Conditioning: return "conditioning";
        case ErrorKind::InadmissibleField: return "inadmissible-field";
        case ErrorKind::DivergenceFailure: return "divergence-failure";
        case ErrorKind::Parameter: return "parameter";
        case ErrorKind::EmptySeries: return "empty-series";
        case ErrorKind::DegenerateDirection: return "degenerate-direction";
        case ErrorKind::Config: return "config";
        case ErrorKind::CorruptInput: return "corrupt-input";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

const char* to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::HalfSpace: return "half-space";
        case DomainKind::WholeSpace: return "whole-space";
        case DomainKind::Torus3: return "torus3";
        case DomainKind::SlabChannelPeriodic: return "slab-channel-periodic";
        case DomainKind::SlabChannelInfinite: return "slab-channel-infinite";
        case DomainKind::Ball: return "ball";
    }
    return "unknown";
}

DomainKind domain_kind_from_string(const std::string& name) {
    for (auto kind : {DomainKind::HalfSpace, DomainKind::WholeSpace, DomainKind::Torus3,
                      DomainKind::SlabChannelPeriodic, DomainKind::SlabChannelInfinite, DomainKind::Ball}) {
        if (name == to_string(kind)) return kind;
    }
    throw Error(ErrorKind::Parameter, "unknown domain kind '" + name + "'");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AxisExtent unbounded() { return {-kInf, kInf, false}; }

AxisExtent periodic(double length) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw Error(ErrorKind::Parameter, "periodic axes need a finite positive period");
    return {0.0, length, true};
}

AxisExtent interval(double lo, double hi) {
    if (!(hi > lo)) throw Error(ErrorKind::Parameter, "empty axis interval");
    return {lo, hi, false};
}

}  // namespace

DomainSpec::DomainSpec(DomainKind kind, std::array<AxisExtent, 3> extents, std::bitset<3> boundary_axes)
    : kind_(kind), extents_(extents), boundary_axes_(boundary_axes) {}

DomainSpec DomainSpec::half_space() {
    return DomainSpec(DomainKind::HalfSpace, {unbounded(), unbounded(), AxisExtent{0.0, kInf, false}},
                      std::bitset<3>("100"));
}

DomainSpec DomainSpec::whole_space() {
    return DomainSpec(DomainKind::WholeSpace, {unbounded(), unbounded(), unbounded()}, {});
}

DomainSpec DomainSpec::torus3(double period) { return torus3(period, period, period); }

DomainSpec DomainSpec::torus3(double lx, double ly, double lz) {
    return DomainSpec(DomainKind::Torus3, {periodic(lx), periodic(ly), periodic(lz)}, {});
}

DomainSpec DomainSpec::slab_channel_periodic(double lx, double ly, double height) {
    return DomainSpec(DomainKind::SlabChannelPeriodic, {periodic(lx), periodic(ly), interval(0.0, height)},
                      std::bitset<3>("100"));
}

DomainSpec DomainSpec::slab_channel_infinite(double height) {
    return DomainSpec(DomainKind::SlabChannelInfinite, {unbounded(), unbounded(), interval(0.0, height)},
                      std::bitset<3>("100"));
}

DomainSpec DomainSpec::ball() {
    return DomainSpec(DomainKind::Ball, {interval(-1.0, 1.0), interval(-1.0, 1.0), interval(-1.0, 1.0)},
                      std::bitset<3>("111"));
}

bool DomainSpec::contains(const Vec3& x, double tol) const {
    for (double c : x)
        if (!std::isfinite(c)) return false;
    if (kind_ == DomainKind::Ball) return norm(x) <= 1.0 + tol;
    for (int a = 0; a < 3; ++a) {
        const auto& e = extents_[a];
        if (e.periodic) continue;
        if (x[a] < e.lo - tol || x[a] > e.hi + tol) return false;
    }
    return true;
}

WeightValue weight_profile(const DomainSpec& domain, double z, WeightSign sign) {
    const bool absolute = sign == WeightSign::Absolute;
    switch (domain.kind()) {
        case DomainKind::HalfSpace: {
            const double d = 1.0 + z;
            return {z / d, 1.0 / (d * d)};
        }
        case DomainKind::WholeSpace: {
            if (!absolute) {
                if (z >= 0.0) return {z / (1.0 + z), 1.0 / ((1.0 + z) * (1.0 + z))};
                return {z / (1.0 - z), 1.0 / ((1.0 - z) * (1.0 - z))};
            }
            const double a = std::abs(z);
            const double s = z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0);
            return {a / (1.0 + a), s / ((1.0 + a) * (1.0 + a))};
        }
        case DomainKind::Torus3: {
            const auto& e = domain.extent(2);
            const double w = 2.0 * std::numbers::pi / e.length();
            const double s = std::sin(w * (z - e.lo));
            const double c = w * std::cos(w * (z - e.lo));
            if (!absolute) return {s, c};
            const double sg = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
            return {std::abs(s), sg * c};
        }
        case DomainKind::SlabChannelPeriodic:
        case DomainKind::SlabChannelInfinite: {
            const auto& e = domain.extent(2);
            const double below = z - e.lo;
            const double above = e.hi - z;
            if (below < above) return {below, 1.0};
            if (above < below) return {above, -1.0};
            return {below, 0.0};
        }
        case DomainKind::Ball:
            break;
    }
    throw Error(ErrorKind::UnsupportedKind, "weight profile along z is only defined on flat domains");
}

double weight_phi(const DomainSpec& domain, const Vec3& x, WeightSign sign) {
    if (!domain.contains(x))
        throw Error(ErrorKind::DomainMismatch, std::string("point outside ") + to_string(domain.kind()));
    if (domain.kind() == DomainKind::Ball) return std::max(0.0, 1.0 - norm(x));
    return weight_profile(domain, x[2], sign).phi;
}

Mat3 ConormalFrame::coefficients(const Vec3& x) const {
    Mat3 c{};
    c[0][0] = 1.0;
    c[1][1] = 1.0;
    c[2][2] = weight_phi(domain, x, sign);
    return c;
}

ConormalFrame conormal_frame(const DomainSpec& domain, WeightSign sign) {
    if (!domain.is_flat())
        throw Error(ErrorKind::UnsupportedKind, "conormal_frame covers flat domains; use a ball chart frame");
    return ConormalFrame{domain, sign};
}

}  // namespace eulerscope
