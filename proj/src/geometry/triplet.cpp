#include "eulerscope/triplet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eulerscope/error.hpp"

namespace eulerscope {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap(double z, double lo, double period) {
    double r = std::fmod(z - lo, period);
    if (r < 0.0) r += period;
    return lo + r;
}

// Weight-axis range of the domain. Periodic axes report one period.
Interval axis_range(const DomainSpec& domain) {
    const auto& e = domain.extent(2);
    return {e.lo, e.hi};
}

// Region intervals, replicated one period either side on periodic axes.
std::vector<Interval> unrolled(const Region& region, const DomainSpec& domain) {
    std::vector<Interval> out;
    const auto& e = domain.extent(2);
    for (const auto& iv : region.intervals) {
        if (!(iv.hi > iv.lo)) continue;
        if (e.periodic) {
            const double p = e.length();
            for (int s = -1; s <= 1; ++s) out.push_back({iv.lo + s * p, iv.hi + s * p});
        } else {
            out.push_back(iv);
        }
    }
    std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    return out;
}

// Closed pieces of the domain's weight-axis range not covered by the region.
// Isolated boundary points are dropped: the domain itself is open there.
std::vector<Interval> complement(const Region& region, const DomainSpec& domain) {
    const Interval range = axis_range(domain);
    const bool periodic = domain.extent(2).periodic;
    std::vector<Interval> out;
    double cur = range.lo;
    for (const auto& piece : unrolled(region, domain)) {
        if (piece.hi <= cur || piece.lo > range.hi) continue;
        if (piece.lo < cur) {
            cur = piece.hi;
            continue;
        }
        out.push_back({cur, piece.lo});
        cur = piece.hi;
    }
    if (cur <= range.hi) out.push_back({cur, range.hi});

    std::vector<Interval> kept;
    for (const auto& c : out) {
        const bool degenerate = c.hi <= c.lo;
        const bool on_edge = c.lo == range.lo || c.lo == range.hi;
        if (degenerate && on_edge && !periodic) continue;
        kept.push_back({c.lo, std::min(c.hi, range.hi)});
    }
    return kept;
}

double gap(const Interval& a, const Interval& b) {
    if (a.hi < b.lo) return b.lo - a.hi;
    if (b.hi < a.lo) return a.lo - b.hi;
    return 0.0;
}

double set_distance(const std::vector<Interval>& a, const std::vector<Interval>& b, const DomainSpec& domain) {
    double best = kInf;
    const auto& e = domain.extent(2);
    const int shifts = e.periodic ? 1 : 0;
    for (const auto& ia : a) {
        for (const auto& ib : b) {
            for (int s = -shifts; s <= shifts; ++s) {
                const double p = e.periodic ? s * e.length() : 0.0;
                best = std::min(best, gap(ia, {ib.lo + p, ib.hi + p}));
            }
        }
    }
    return best;
}

std::vector<double> sample_points(Interval c) {
    if (!std::isfinite(c.lo) && !std::isfinite(c.hi)) c = {-10.0, 10.0};
    else if (!std::isfinite(c.hi)) c.hi = c.lo + 10.0;
    else if (!std::isfinite(c.lo)) c.lo = c.hi - 10.0;
    std::vector<double> zs;
    const int n = 41;
    for (int i = 0; i < n; ++i) zs.push_back(c.lo + (c.hi - c.lo) * i / (n - 1));
    return zs;
}

constexpr std::array<double, 4> kTangentialSamples = {0.0, 0.37, -1.3, 2.9};

}  // namespace

bool Region::contains(const DomainSpec& domain, double z) const {
    const auto& e = domain.extent(2);
    for (const auto& iv : intervals) {
        if (e.periodic) {
            const double p = e.length();
            const double zz = wrap(z, e.lo, p);
            for (double cand : {zz - p, zz, zz + p})
                if (cand > iv.lo && cand < iv.hi) return true;
        } else if (z > iv.lo && z < iv.hi) {
            return true;
        }
    }
    return false;
}

bool Region::contains_node(const DomainSpec& domain, double z) const {
    if (contains(domain, z)) return true;
    const auto& e = domain.extent(2);
    if (e.periodic || !domain.boundary_axes().test(2)) return false;
    const double scale = std::isfinite(e.length()) ? e.length() : 1.0;
    const double nudge = 1e-9 * scale;
    if (std::abs(z - e.lo) <= 1e-12 * scale) return contains(domain, e.lo + nudge);
    if (std::isfinite(e.hi) && std::abs(z - e.hi) <= 1e-12 * scale) return contains(domain, e.hi - nudge);
    return false;
}

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double smooth_step_derivative(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double s = t * (1.0 - t);
    return 30.0 * s * s;
}

CompatibleTriplet make_slab_triplet(const DomainSpec& domain, double a, double b) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        std::ostringstream os;
        os << "transition interval (" << a << ", " << b << ") is empty";
        throw Error(ErrorKind::InvalidInterval, os.str());
    }
    const double width = b - a;
    CompatibleTriplet t;
    t.transition = {a, b};

    switch (domain.kind()) {
        case DomainKind::HalfSpace: {
            if (!(a > 0.0)) throw Error(ErrorKind::InvalidInterval, "half-space triplet needs 0 < a");
            t.omega1 = {{{0.0, b}}};
            t.omega2 = {{{a, kInf}}};
            t.chi = [a, width](const Vec3& x) { return 1.0 - smooth_step((x[2] - a) / width); };
            t.chi_dz = [a, width](const Vec3& x) { return -smooth_step_derivative((x[2] - a) / width) / width; };
            return t;
        }
        case DomainKind::SlabChannelPeriodic:
        case DomainKind::SlabChannelInfinite: {
            const auto& e = domain.extent(2);
            if (!(a > 0.0)) throw Error(ErrorKind::InvalidInterval, "slab triplet needs 0 < a");
            if (!(b < 0.5 * e.length()))
                throw Error(ErrorKind::InvalidInterval, "slab triplet needs b below the channel half-height");
            const double lo = e.lo;
            const double hi = e.hi;
            t.omega1 = {{{lo, lo + b}, {hi - b, hi}}};
            t.omega2 = {{{lo + a, hi - a}}};
            t.chi = [=](const Vec3& x) {
                const double d = std::min(x[2] - lo, hi - x[2]);
                return 1.0 - smooth_step((d - a) / width);
            };
            t.chi_dz = [=](const Vec3& x) {
                const double below = x[2] - lo;
                const double above = hi - x[2];
                const double d = std::min(below, above);
                const double sign = below <= above ? 1.0 : -1.0;
                return -sign * smooth_step_derivative((d - a) / width) / width;
            };
            return t;
        }
        case DomainKind::WholeSpace: {
            if (!(a > 0.0))
                throw Error(ErrorKind::InvalidTriplet,
                            "whole-space triplet with a <= 0 lets Omega1 touch {z = 0} (condition iii)");
            t.omega1 = {{{-kInf, -a}, {a, kInf}}};
            t.omega2 = {{{-b, b}}};
            t.chi = [a, width](const Vec3& x) { return smooth_step((std::abs(x[2]) - a) / width); };
            t.chi_dz = [a, width](const Vec3& x) {
                const double sign = x[2] >= 0.0 ? 1.0 : -1.0;
                return sign * smooth_step_derivative((std::abs(x[2]) - a) / width) / width;
            };
            return t;
        }
        case DomainKind::Torus3: {
            const auto& e = domain.extent(2);
            const double p = e.length();
            const double lo = e.lo;
            if (!(a > 0.0))
                throw Error(ErrorKind::InvalidTriplet,
                            "torus triplet with a <= 0 lets Omega1 touch {z = 0} (condition iii)");
            if (!(b < 0.5 * p)) throw Error(ErrorKind::InvalidInterval, "torus triplet needs b below half a period");
            t.omega1 = {{{lo + a, lo + p - a}}};
            t.omega2 = {{{lo - b, lo + b}}};
            t.chi = [=](const Vec3& x) {
                const double zz = wrap(x[2], lo, p) - lo;
                return smooth_step((std::min(zz, p - zz) - a) / width);
            };
            t.chi_dz = [=](const Vec3& x) {
                const double zz = wrap(x[2], lo, p) - lo;
                const double sign = zz <= p - zz ? 1.0 : -1.0;
                return sign * smooth_step_derivative((std::min(zz, p - zz) - a) / width) / width;
            };
            return t;
        }
        case DomainKind::Ball:
            break;
    }
    throw Error(ErrorKind::UnsupportedKind, "slab triplets are defined on flat domains; the ball uses an atlas");
}

TripletValidation validate_triplet(const CompatibleTriplet& triplet, const DomainSpec& domain) {
    TripletValidation report;
    if (!domain.is_flat()) {
        report.failures.push_back("unsupported domain: triplets are defined on flat domains");
        return report;
    }
    if (!triplet.chi) {
        report.failures.push_back("(ii) cutoff chi missing");
        return report;
    }

    const auto c1 = complement(triplet.omega1, domain);
    const auto c2 = complement(triplet.omega2, domain);

    // (i)
    report.complement_gap = set_distance(c1, c2, domain);
    report.separated = report.complement_gap > 1e-12;
    if (!report.separated) {
        std::ostringstream os;
        os << "(i) d(Omega1^c, Omega2^c) = " << report.complement_gap << " is not positive";
        report.failures.push_back(os.str());
    }

    // (ii)
    const double tol = 1e-12;
    double chi_err = 0.0;
    for (const auto& c : c2)
        for (double z : sample_points(c))
            for (double xt : kTangentialSamples) chi_err = std::max(chi_err, std::abs(triplet.chi({xt, -xt, z}) - 1.0));
    for (const auto& c : c1)
        for (double z : sample_points(c))
            for (double xt : kTangentialSamples) chi_err = std::max(chi_err, std::abs(triplet.chi({xt, -xt, z})));
    report.max_chi_error = chi_err;

    const Interval range = axis_range(domain);
    const double h = 1e-4;
    double slope = 0.0;
    for (double z : sample_points(range)) {
        if (!domain.contains({0.0, 0.0, z})) continue;
        for (double xt : kTangentialSamples) {
            const Vec3 x{xt, 0.5 * xt, z};
            const double d1 = (triplet.chi({x[0] + h, x[1], z}) - triplet.chi({x[0] - h, x[1], z})) / (2 * h);
            const double d2 = (triplet.chi({x[0], x[1] + h, z}) - triplet.chi({x[0], x[1] - h, z})) / (2 * h);
            slope = std::max({slope, std::abs(d1), std::abs(d2)});
        }
    }
    report.max_tangential_slope = slope;
    report.cutoff_ok = chi_err <= tol && slope <= 1e-8;
    if (chi_err > tol) {
        std::ostringstream os;
        os << "(ii) chi deviates from 1 on Omega2^c / 0 on Omega1^c by " << chi_err;
        report.failures.push_back(os.str());
    }
    if (slope > 1e-8) {
        std::ostringstream os;
        os << "(ii) chi has tangential derivative of size " << slope;
        report.failures.push_back(os.str());
    }

    // (iii)
    report.plane_check_applies = domain.kind() == DomainKind::WholeSpace || domain.kind() == DomainKind::Torus3;
    if (report.plane_check_applies) {
        double dist = kInf;
        for (const auto& iv : unrolled(triplet.omega1, domain)) {
            std::vector<double> planes{0.0};
            if (domain.extent(2).periodic) {
                planes.push_back(domain.extent(2).lo);
                planes.push_back(domain.extent(2).hi);
            }
            for (double p : planes) {
                if (iv.lo < p && p < iv.hi) dist = 0.0;
                else dist = std::min({dist, std::abs(iv.lo - p), std::abs(iv.hi - p)});
            }
        }
        report.plane_distance = dist;
        report.away_from_plane = dist > 1e-12;
        if (!report.away_from_plane) {
            std::ostringstream os;
            os << "(iii) d(Omega1, {z = 0}) = " << dist << " is not positive";
            report.failures.push_back(os.str());
        }
    }
    return report;
}

}  // namespace eulerscope
