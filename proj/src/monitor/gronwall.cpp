#include "eulerscope/gronwall.hpp"

#include <cmath>
#include <limits>

#include "eulerscope/error.hpp"

namespace eulerscope {

namespace {

GronwallReport audit(const std::vector<double>& t, const std::vector<double>& w, const std::vector<double>& rate,
                     double c1, double c2, double base_tolerance) {
    if (t.size() < 2) throw Error(ErrorKind::EmptySeries, "Gronwall audit needs at least two samples");
    GronwallReport r;
    r.c1 = c1;
    r.c2 = c2;
    r.times = t;
    r.measured = w;
    r.scale = std::max(1.0, w.front());
    double acc = 0.0;
    r.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0) acc += 0.5 * (t[i] - t[i - 1]) * (rate[i] + rate[i - 1]);
        const double b = w.front() + acc;
        r.bound.push_back(b);
        r.ratio.push_back(b > 0.0 ? w[i] / b : 0.0);
        r.margin = std::min(r.margin, (b - w[i]) / r.scale);
    }
    r.quadrature_error = trapezoid_error_estimate(t, rate) / r.scale;
    r.tolerance = base_tolerance + r.quadrature_error;
    r.pass = r.margin >= -r.tolerance;
    return r;
}

}  // namespace

GronwallReport gronwall_audit(const CriterionSeries& s, double c1, double c2, double base_tolerance) {
    std::vector<double> w;
    std::vector<double> rate;
    for (const auto& r : s.reports()) {
        const double g = r.linf_grad_h_u;
        w.push_back(r.linf_omega);
        rate.push_back(c1 * r.linf_omega * g + c2 * g * g);
    }
    return audit(s.times(), w, rate, c1, c2, base_tolerance);
}

GronwallReport gronwall_audit_local(const CriterionSeries& s, double c1, double c2, double base_tolerance) {
    if (!s.available(Criterion::Mixed)) throw Error(ErrorKind::Config, "local audit needs a triplet");
    std::vector<double> w;
    std::vector<double> rate;
    for (const auto& r : s.reports()) {
        const RegionalNorms& g = *r.regional;
        const double gh = g.linf_grad_h_u_omega1;
        w.push_back(g.linf_chi_omega);
        rate.push_back(c1 * g.linf_chi_omega * gh + c2 * gh * gh + g.cutoff_advection);
    }
    return audit(s.times(), w, rate, c1, c2, base_tolerance);
}

}  // namespace eulerscope
