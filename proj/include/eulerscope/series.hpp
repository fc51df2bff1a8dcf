#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eulerscope/monitor.hpp"

namespace eulerscope {

/// Monitored criterion integrands:
///   bkm        ||w||_inf
///   ponce      sum_{i,j} ||d_i u_j + d_j u_i||_inf
///   cfm        (1 + ||u||_inf) ||grad(w/|w|)||_inf
///   tan2       ||u||_{W^{1,inf}_tan}^2
///   tan2_h     ||grad_h u||_inf^2 (flat-boundary variant)
///   mixed      ||u||_{W^{1,inf}_co(Omega1)}^2 + ||w||_{L^inf(Omega2)}
///   conormal   ||u||_{W^{1,inf}_co}^2 + ||u||_{W^{2,inf}_co}
enum class Criterion { Bkm, Ponce, Cfm, Tan2, Tan2H, Mixed, Conormal };

inline constexpr Criterion kAllCriteria[] = {Criterion::Bkm,   Criterion::Ponce, Criterion::Cfm,     Criterion::Tan2,
                                             Criterion::Tan2H, Criterion::Mixed, Criterion::Conormal};

const char* to_string(Criterion c);
std::optional<Criterion> criterion_from_string(const std::string& name);

struct SeriesMetadata {
    std::string domain;
    std::string grid;
    std::uint64_t seed = 0;
    std::optional<Interval> triplet;
    /// Last recorded time: the series' stand-in for the maximal time.
    double termination_time = 0.0;
    std::string termination = "completed";
};

/// Time-ordered norm records. Appends must strictly increase in time.
class CriterionSeries {
public:
    CriterionSeries() = default;
    explicit CriterionSeries(SeriesMetadata meta) : meta_(std::move(meta)) {}

    void append(const NormReport& r);

    const std::vector<NormReport>& reports() const { return reports_; }
    std::size_t size() const { return reports_.size(); }
    SeriesMetadata& metadata() { return meta_; }
    const SeriesMetadata& metadata() const { return meta_; }

    std::vector<double> times() const;
    /// Whether every sample carries the inputs of `c` (cfm needs nonzero
    /// vorticity, mixed needs regional norms).
    bool available(Criterion c) const;
    /// Errors: Config when the criterion's inputs are missing,
    /// DegenerateDirection for cfm on a vanishing vorticity sample.
    std::vector<double> integrand(Criterion c) const;
    /// Cumulative trapezoid integral, one entry per sample (first is 0).
    std::vector<double> running_integral(Criterion c) const;

    /// Every recorded sample (stride 1) or every other one (stride 2, the last
    /// sample always kept).
    CriterionSeries subsampled(std::size_t stride) const;

private:
    SeriesMetadata meta_;
    std::vector<NormReport> reports_;
};

/// Trapezoid rule on possibly nonuniform samples. Errors: EmptySeries for
/// fewer than two samples.
double trapezoid(const std::vector<double>& t, const std::vector<double>& f);

/// Cadence-halving estimate |I_h - I_2h|, where I_2h drops every other
/// sample. With fewer than three samples the estimate is |I_h|.
double trapezoid_error_estimate(const std::vector<double>& t, const std::vector<double>& f);

double integral(const CriterionSeries& s, Criterion c);
double integral_error_estimate(const CriterionSeries& s, Criterion c);

double integral_bkm(const CriterionSeries& s);
double integral_ponce(const CriterionSeries& s);
double integral_cfm(const CriterionSeries& s);
double integral_tan2(const CriterionSeries& s);
double integral_tan2_h(const CriterionSeries& s);
double integral_conormal(const CriterionSeries& s);

/// Regional parts of the mixed criterion and their sum.
struct MixedIntegral {
    double omega1_term = 0.0;  // int ||u||_{W^{1,inf}_co(Omega1)}^2
    double omega2_term = 0.0;  // int ||w||_{L^inf(Omega2)}
    double total = 0.0;
};
MixedIntegral integral_mixed(const CriterionSeries& s);

/// Least-squares slope of log ||w||_inf over the trailing window.
struct GrowthFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double window_start = 0.0;
    std::size_t samples = 0;
};
/// window_fraction in (0, 1]: share of trailing samples used (at least two).
std::optional<GrowthFit> fit_growth(const std::vector<double>& t, const std::vector<double>& y,
                                    double window_fraction = 0.5);

}  // namespace eulerscope
