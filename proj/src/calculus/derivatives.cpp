#include "eulerscope/derivatives.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "eulerscope/error.hpp"
#include "eulerscope/fft.hpp"
#include "eulerscope/finite_difference.hpp"

namespace eulerscope {

namespace {

using fft::Buffer;
using fft::Complex;

constexpr double kNyquistTolerance = 1e-6;
// Normalized Nyquist amplitudes below this are rounding noise, e.g. the
// derivative of a field that is constant along another axis.
constexpr double kNyquistNoise = 1e-12;

struct Lines {
    std::size_t n = 0;
    std::size_t stride = 0;
    std::vector<std::size_t> starts;
};

Lines lines_along(const Grid3& g, int axis) {
    const auto d = g.dims();
    Lines l;
    l.n = d[axis];
    l.stride = axis == 0 ? 1 : (axis == 1 ? d[0] : d[0] * d[1]);
    const int a1 = axis == 0 ? 1 : 0;
    const int a2 = axis == 2 ? 1 : 2;
    for (std::size_t q = 0; q < d[a2]; ++q) {
        for (std::size_t p = 0; p < d[a1]; ++p) {
            std::array<std::size_t, 3> ijk{0, 0, 0};
            ijk[a1] = p;
            ijk[a2] = q;
            l.starts.push_back(g.index(ijk[0], ijk[1], ijk[2]));
        }
    }
    return l;
}

void gather(const std::vector<double>& src, const Lines& l, double* dst) {
    for (std::size_t c = 0; c < l.starts.size(); ++c)
        for (std::size_t i = 0; i < l.n; ++i) dst[c * l.n + i] = src[l.starts[c] + i * l.stride];
}

void scatter(const double* src, const Lines& l, std::vector<double>& dst) {
    for (std::size_t c = 0; c < l.starts.size(); ++c)
        for (std::size_t i = 0; i < l.n; ++i) dst[l.starts[c] + i * l.stride] = src[c * l.n + i];
}

// (i k)^order for real k, returned as a complex multiplier.
Complex ik_power(double k, int order) {
    Complex m{1.0, 0.0};
    for (int o = 0; o < order; ++o) m *= Complex{0.0, k};
    return m;
}

void periodic_lines(double* data, std::size_t n, std::size_t count, double length, int order) {
    const std::size_t nc = n / 2 + 1;
    Buffer<Complex> spec(nc * count);
    fftw_plan fwd;
    fftw_plan bwd;
    {
        std::lock_guard lock(fft::planner_mutex());
        const int nn = static_cast<int>(n);
        fwd = fftw_plan_many_dft_r2c(1, &nn, static_cast<int>(count), data, nullptr, 1, nn,
                                     reinterpret_cast<fftw_complex*>(spec.data()), nullptr, 1,
                                     static_cast<int>(nc), FFTW_ESTIMATE);
        bwd = fftw_plan_many_dft_c2r(1, &nn, static_cast<int>(count),
                                     reinterpret_cast<fftw_complex*>(spec.data()), nullptr, 1,
                                     static_cast<int>(nc), data, nullptr, 1, nn, FFTW_ESTIMATE);
    }
    fftw_execute(fwd);

    // Nyquist content is measured against the largest coefficient of the
    // whole field, so lines carrying only rounding noise are not flagged.
    double biggest = 0.0;
    for (std::size_t i = 0; i < nc * count; ++i) biggest = std::max(biggest, std::abs(spec[i]));
    const double noise = kNyquistNoise * static_cast<double>(n);
    for (std::size_t c = 0; c < count; ++c) {
        const Complex* line = spec.data() + c * nc;
        const double nyq = std::abs(line[nc - 1]);
        if (nyq > noise && nyq > kNyquistTolerance * biggest) {
            std::lock_guard lock(fft::planner_mutex());
            fftw_destroy_plan(fwd);
            fftw_destroy_plan(bwd);
            std::ostringstream os;
            os << "sample is not periodic along the axis (Nyquist/peak ratio "
               << nyq / biggest << ")";
            throw Error(ErrorKind::NonPeriodicSample, os.str());
        }
    }

    const double base = 2.0 * std::numbers::pi / length;
    for (std::size_t m = 0; m < nc; ++m) {
        Complex mult = ik_power(base * static_cast<double>(m), order);
        if (m == n / 2 && order % 2 == 1) mult = 0.0;
        mult /= static_cast<double>(n);
        for (std::size_t c = 0; c < count; ++c) spec[c * nc + m] *= mult;
    }
    fftw_execute(bwd);
    std::lock_guard lock(fft::planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
}

fftw_plan plan_r2r(double* data, int n, std::size_t count, int line_stride, fftw_r2r_kind kind) {
    std::lock_guard lock(fft::planner_mutex());
    return fftw_plan_many_r2r(1, &n, static_cast<int>(count), data, nullptr, 1, line_stride, data, nullptr, 1,
                              line_stride, &kind, FFTW_ESTIMATE);
}

void destroy(fftw_plan p) {
    std::lock_guard lock(fft::planner_mutex());
    fftw_destroy_plan(p);
}

// Cosine/sine series along wall-to-wall lines of n nodes. Coefficients are
// indexed by mode m = 0..n-1 with wavenumber pi m / length; cosine modes use
// the DCT-I of all nodes, sine modes the DST-I of the n - 2 interior nodes.
void parity_lines(double* data, std::size_t n, std::size_t count, double length, int order, Parity in) {
    const std::size_t nz = n - 1;  // intervals
    const int ni = static_cast<int>(n);
    const int interior = static_cast<int>(n - 2);
    std::vector<double> coef(n * count, 0.0);

    if (in == Parity::Even) {
        fftw_plan p = plan_r2r(data, ni, count, ni, FFTW_REDFT00);
        fftw_execute(p);
        destroy(p);
        for (std::size_t i = 0; i < n * count; ++i) coef[i] = data[i];
    } else {
        Buffer<double> inner(static_cast<std::size_t>(interior) * count);
        for (std::size_t c = 0; c < count; ++c)
            for (int i = 0; i < interior; ++i) inner[c * interior + i] = data[c * n + 1 + i];
        fftw_plan p = plan_r2r(inner.data(), interior, count, interior, FFTW_RODFT00);
        fftw_execute(p);
        destroy(p);
        for (std::size_t c = 0; c < count; ++c)
            for (int i = 0; i < interior; ++i) coef[c * n + 1 + i] = inner[c * interior + i];
    }

    // d/dz cos(kz) = -k sin(kz), d/dz sin(kz) = k cos(kz).
    Parity cur = in;
    const double base = std::numbers::pi / length;
    for (int o = 0; o < order; ++o) {
        for (std::size_t c = 0; c < count; ++c) {
            for (std::size_t m = 0; m < n; ++m) {
                const double k = base * static_cast<double>(m);
                coef[c * n + m] *= (cur == Parity::Even ? -k : k);
            }
            if (cur == Parity::Even) {
                coef[c * n] = 0.0;
                coef[c * n + nz] = 0.0;
            }
        }
        cur = flip(cur);
    }

    const double norm = 1.0 / (2.0 * static_cast<double>(nz));
    if (cur == Parity::Even) {
        for (std::size_t i = 0; i < n * count; ++i) data[i] = coef[i] * norm;
        fftw_plan p = plan_r2r(data, ni, count, ni, FFTW_REDFT00);
        fftw_execute(p);
        destroy(p);
    } else {
        Buffer<double> inner(static_cast<std::size_t>(interior) * count);
        for (std::size_t c = 0; c < count; ++c)
            for (int i = 0; i < interior; ++i) inner[c * interior + i] = coef[c * n + 1 + i] * norm;
        fftw_plan p = plan_r2r(inner.data(), interior, count, interior, FFTW_RODFT00);
        fftw_execute(p);
        destroy(p);
        for (std::size_t c = 0; c < count; ++c) {
            data[c * n] = 0.0;
            data[c * n + nz] = 0.0;
            for (int i = 0; i < interior; ++i) data[c * n + 1 + i] = inner[c * interior + i];
        }
    }
}

}  // namespace

ScalarField derivative(const ScalarField& f, int axis, int order) {
    if (axis < 0 || axis > 2) throw Error(ErrorKind::Parameter, "axis must be 0, 1 or 2");
    if (order < 0) throw Error(ErrorKind::Parameter, "derivative order must be nonnegative");
    if (order == 0) return f;
    const Grid3& g = f.grid();
    const Axis& ax = g.axis(axis);
    const Lines l = lines_along(g, axis);
    const std::size_t count = l.starts.size();
    Buffer<double> buf(l.n * count);
    gather(f.values(), l, buf.data());

    Parity out_parity = f.parity();
    switch (ax.kind) {
        case AxisKind::Periodic:
            periodic_lines(buf.data(), l.n, count, ax.length, order);
            break;
        case AxisKind::WallParity:
            if (f.parity() == Parity::None)
                throw Error(ErrorKind::UnsupportedGrid, "wall-parity derivative needs an even or odd field");
            parity_lines(buf.data(), l.n, count, ax.length, order, f.parity());
            if (order % 2 == 1) out_parity = flip(f.parity());
            break;
        case AxisKind::Bounded: {
            Buffer<double> tmp(l.n);
            for (std::size_t c = 0; c < count; ++c) {
                std::span<double> line(buf.data() + c * l.n, l.n);
                int remaining = order;
                while (remaining > 0) {
                    const int step = remaining >= 2 ? 2 : 1;
                    fd_derivative_line(line, std::span<double>(tmp.data(), l.n), ax.spacing(), step);
                    std::copy(tmp.data(), tmp.data() + l.n, line.begin());
                    remaining -= step;
                }
            }
            break;
        }
    }
    ScalarField out(g, out_parity);
    scatter(buf.data(), l, out.values());
    return out;
}

VectorField gradient(const ScalarField& f) {
    return VectorField(derivative(f, 0), derivative(f, 1), derivative(f, 2));
}

Jacobian jacobian(const VectorField& u) {
    return Jacobian{{{{derivative(u[0], 0), derivative(u[0], 1), derivative(u[0], 2)},
                      {derivative(u[1], 0), derivative(u[1], 1), derivative(u[1], 2)},
                      {derivative(u[2], 0), derivative(u[2], 1), derivative(u[2], 2)}}}};
}

VectorField curl(const Jacobian& j) {
    const Grid3& g = j(0, 0).grid();
    auto diff = [&](const ScalarField& a, const ScalarField& b) {
        ScalarField out(g, a.parity());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
        return out;
    };
    return VectorField(diff(j(2, 1), j(1, 2)), diff(j(0, 2), j(2, 0)), diff(j(1, 0), j(0, 1)));
}

ScalarField divergence(const Jacobian& j) {
    ScalarField out(j(0, 0).grid(), j(0, 0).parity());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = j(0, 0)[i] + j(1, 1)[i] + j(2, 2)[i];
    return out;
}

VectorField curl(const VectorField& u) {
    const ScalarField d2u1 = derivative(u[1], 2);
    const ScalarField d1u2 = derivative(u[2], 1);
    const ScalarField d0u2 = derivative(u[2], 0);
    const ScalarField d2u0 = derivative(u[0], 2);
    const ScalarField d0u1 = derivative(u[1], 0);
    const ScalarField d1u0 = derivative(u[0], 1);
    VectorField w(u.grid(), {d1u2.parity(), d2u0.parity(), d0u1.parity()});
    for (std::size_t i = 0; i < u.grid().size(); ++i) {
        w[0][i] = d1u2[i] - d2u1[i];
        w[1][i] = d2u0[i] - d0u2[i];
        w[2][i] = d0u1[i] - d1u0[i];
    }
    return w;
}

ScalarField divergence(const VectorField& u) {
    const ScalarField a = derivative(u[0], 0);
    const ScalarField b = derivative(u[1], 1);
    const ScalarField c = derivative(u[2], 2);
    ScalarField out(u.grid(), a.parity());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i] + c[i];
    return out;
}

}  // namespace eulerscope
