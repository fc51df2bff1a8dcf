#include "eulerscope/series.hpp"

#include <cmath>
#include <sstream>

#include "eulerscope/error.hpp"

namespace eulerscope {

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::Bkm: return "bkm";
        case Criterion::Ponce: return "ponce";
        case Criterion::Cfm: return "cfm";
        case Criterion::Tan2: return "tan2";
        case Criterion::Tan2H: return "tan2_h";
        case Criterion::Mixed: return "mixed";
        case Criterion::Conormal: return "conormal";
    }
    return "unknown";
}

std::optional<Criterion> criterion_from_string(const std::string& name) {
    for (Criterion c : kAllCriteria)
        if (name == to_string(c)) return c;
    return std::nullopt;
}

void CriterionSeries::append(const NormReport& r) {
    if (!reports_.empty() && !(r.time > reports_.back().time)) {
        std::ostringstream os;
        os << "sample time " << r.time << " does not follow " << reports_.back().time;
        throw Error(ErrorKind::Parameter, os.str());
    }
    reports_.push_back(r);
    meta_.termination_time = r.time;
}

std::vector<double> CriterionSeries::times() const {
    std::vector<double> t;
    for (const auto& r : reports_) t.push_back(r.time);
    return t;
}

bool CriterionSeries::available(Criterion c) const {
    for (const auto& r : reports_) {
        if (c == Criterion::Cfm && !r.cfm) return false;
        if (c == Criterion::Mixed && !r.regional) return false;
    }
    return true;
}

std::vector<double> CriterionSeries::integrand(Criterion c) const {
    std::vector<double> f;
    f.reserve(reports_.size());
    for (const auto& r : reports_) {
        switch (c) {
            case Criterion::Bkm: f.push_back(r.linf_omega); break;
            case Criterion::Ponce: f.push_back(r.deformation); break;
            case Criterion::Cfm:
                if (!r.cfm)
                    throw Error(ErrorKind::DegenerateDirection, "vorticity vanishes at a sample: cfm undefined");
                f.push_back(*r.cfm);
                break;
            case Criterion::Tan2: f.push_back(r.w1inf_tan * r.w1inf_tan); break;
            case Criterion::Tan2H: f.push_back(r.linf_grad_h_u * r.linf_grad_h_u); break;
            case Criterion::Mixed:
                if (!r.regional) throw Error(ErrorKind::Config, "mixed criterion needs a triplet");
                f.push_back(r.regional->w1inf_co_omega1 * r.regional->w1inf_co_omega1 + r.regional->linf_omega_omega2);
                break;
            case Criterion::Conormal: f.push_back(r.w1inf_co * r.w1inf_co + r.w2inf_co); break;
        }
    }
    return f;
}

std::vector<double> CriterionSeries::running_integral(Criterion c) const {
    const auto t = times();
    const auto f = integrand(c);
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    return out;
}

CriterionSeries CriterionSeries::subsampled(std::size_t stride) const {
    if (stride == 0) throw Error(ErrorKind::Parameter, "stride must be positive");
    CriterionSeries out(meta_);
    for (std::size_t i = 0; i < reports_.size(); i += stride) out.reports_.push_back(reports_[i]);
    if (!reports_.empty() && (reports_.size() - 1) % stride != 0) out.reports_.push_back(reports_.back());
    return out;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
    if (t.size() < 2 || f.size() != t.size())
        throw Error(ErrorKind::EmptySeries, "integral needs at least two samples");
    double acc = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) acc += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    return acc;
}

double trapezoid_error_estimate(const std::vector<double>& t, const std::vector<double>& f) {
    const double fine = trapezoid(t, f);
    if (t.size() < 3) return std::abs(fine);
    std::vector<double> tc;
    std::vector<double> fc;
    for (std::size_t i = 0; i < t.size(); i += 2) {
        tc.push_back(t[i]);
        fc.push_back(f[i]);
    }
    if ((t.size() - 1) % 2 != 0) {
        tc.push_back(t.back());
        fc.push_back(f.back());
    }
    return std::abs(fine - trapezoid(tc, fc));
}

double integral(const CriterionSeries& s, Criterion c) { return trapezoid(s.times(), s.integrand(c)); }

double integral_error_estimate(const CriterionSeries& s, Criterion c) {
    return trapezoid_error_estimate(s.times(), s.integrand(c));
}

double integral_bkm(const CriterionSeries& s) { return integral(s, Criterion::Bkm); }
double integral_ponce(const CriterionSeries& s) { return integral(s, Criterion::Ponce); }
double integral_cfm(const CriterionSeries& s) { return integral(s, Criterion::Cfm); }
double integral_tan2(const CriterionSeries& s) { return integral(s, Criterion::Tan2); }
double integral_tan2_h(const CriterionSeries& s) { return integral(s, Criterion::Tan2H); }
double integral_conormal(const CriterionSeries& s) { return integral(s, Criterion::Conormal); }

MixedIntegral integral_mixed(const CriterionSeries& s) {
    if (!s.available(Criterion::Mixed)) throw Error(ErrorKind::Config, "mixed criterion needs a triplet");
    const auto t = s.times();
    std::vector<double> a;
    std::vector<double> b;
    for (const auto& r : s.reports()) {
        a.push_back(r.regional->w1inf_co_omega1 * r.regional->w1inf_co_omega1);
        b.push_back(r.regional->linf_omega_omega2);
    }
    MixedIntegral m;
    m.omega1_term = trapezoid(t, a);
    m.omega2_term = trapezoid(t, b);
    m.total = integral(s, Criterion::Mixed);
    return m;
}

std::optional<GrowthFit> fit_growth(const std::vector<double>& t, const std::vector<double>& y,
                                    double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        throw Error(ErrorKind::Parameter, "window fraction must lie in (0, 1]");
    const std::size_t n = t.size();
    if (n < 2 || y.size() != n) return std::nullopt;
    const auto want = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(n)));
    const std::size_t first = n - std::max<std::size_t>(2, std::min(n, want));
    double st = 0, sy = 0, stt = 0, sty = 0;
    std::size_t m = 0;
    for (std::size_t i = first; i < n; ++i) {
        if (!(y[i] > 0.0)) continue;
        const double ly = std::log(y[i]);
        st += t[i];
        sy += ly;
        stt += t[i] * t[i];
        sty += t[i] * ly;
        ++m;
    }
    if (m < 2) return std::nullopt;
    const double dm = static_cast<double>(m);
    const double den = dm * stt - st * st;
    if (den == 0.0) return std::nullopt;
    GrowthFit g;
    g.exponent = (dm * sty - st * sy) / den;
    g.intercept = (sy - g.exponent * st) / dm;
    g.window_start = t[first];
    g.samples = m;
    return g;
}

}  // namespace eulerscope
