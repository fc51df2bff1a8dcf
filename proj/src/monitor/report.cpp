#include "eulerscope/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eulerscope/error.hpp"
#include "eulerscope/gronwall.hpp"

namespace eulerscope {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string omission_reason(const CriterionSeries& s, Criterion c) {
    if (s.available(c)) return {};
    if (c == Criterion::Cfm) return "vorticity vanishes at some sample (direction field undefined)";
    if (c == Criterion::Mixed) return "no triplet configured";
    return "inputs missing";
}

}  // namespace

int SeriesTable::find(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<double> SeriesTable::column(const std::string& name) const {
    const int c = find(name);
    if (c < 0) throw Error(ErrorKind::CorruptInput, "series has no column '" + name + "'");
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r[static_cast<std::size_t>(c)]);
    return out;
}

SeriesTable make_table(const CriterionSeries& s, const std::vector<Criterion>& enabled,
                       std::vector<Omission>* omitted) {
    SeriesTable t;
    t.columns = {"time",      "linf_u",    "linf_omega", "linf_grad_h_u", "linf_grad_u", "w1inf_tan",  "w1inf_co",
                 "w2inf_co",  "energy",    "enstrophy",  "helicity",      "deformation", "cfm_mask_fraction"};
    const bool regional = !s.reports().empty() && s.available(Criterion::Mixed);
    if (regional)
        for (const char* c : {"w1inf_co_omega1", "linf_omega_omega2", "linf_chi_omega", "linf_grad_h_u_omega1",
                              "cutoff_advection"})
            t.columns.push_back(c);

    std::vector<Criterion> used;
    for (Criterion c : kAllCriteria) {
        if (std::find(enabled.begin(), enabled.end(), c) == enabled.end()) continue;
        const std::string why = omission_reason(s, c);
        if (!why.empty()) {
            if (omitted) omitted->push_back({c, why});
            continue;
        }
        used.push_back(c);
        t.columns.push_back(std::string(to_string(c)) + "_integrand");
        t.columns.push_back(std::string(to_string(c)) + "_integral");
    }
    std::vector<std::vector<double>> f;
    std::vector<std::vector<double>> cum;
    for (Criterion c : used) {
        f.push_back(s.integrand(c));
        cum.push_back(s.running_integral(c));
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        const NormReport& r = s.reports()[i];
        std::vector<double> row{r.time,     r.linf_u,   r.linf_omega, r.linf_grad_h_u, r.linf_grad_u,
                                r.w1inf_tan, r.w1inf_co, r.w2inf_co,   r.energy,        r.enstrophy,
                                r.helicity, r.deformation, r.cfm_mask_fraction};
        if (regional) {
            const RegionalNorms& g = *r.regional;
            for (double v : {g.w1inf_co_omega1, g.linf_omega_omega2, g.linf_chi_omega, g.linf_grad_h_u_omega1,
                             g.cutoff_advection})
                row.push_back(v);
        }
        for (std::size_t k = 0; k < used.size(); ++k) {
            row.push_back(f[k][i]);
            row.push_back(cum[k][i]);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string to_csv(const SeriesTable& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + fmt("%.17g", row[i]);
        out += '\n';
    }
    return out;
}

SeriesTable parse_csv(const std::string& text) {
    if (text.empty()) throw Error(ErrorKind::CorruptInput, "series file is empty");
    if (text.back() != '\n') throw Error(ErrorKind::CorruptInput, "series file is truncated (no final newline)");
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    auto split = [](const std::string& line) {
        std::vector<std::string> f;
        std::size_t p = 0;
        while (true) {
            const std::size_t c = line.find(',', p);
            f.push_back(line.substr(p, c == std::string::npos ? std::string::npos : c - p));
            if (c == std::string::npos) break;
            p = c + 1;
        }
        return f;
    };
    SeriesTable t;
    t.columns = split(lines.front());
    if (t.columns.empty() || t.columns.front() != "time")
        throw Error(ErrorKind::CorruptInput, "series header must start with 'time'");
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = split(lines[li]);
        if (fields.size() != t.columns.size()) {
            std::ostringstream os;
            os << "series row " << li + 1 << " has " << fields.size() << " fields, expected " << t.columns.size();
            throw Error(ErrorKind::CorruptInput, os.str());
        }
        std::vector<double> row;
        for (const auto& f : fields) {
            double v = 0.0;
            const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (res.ec != std::errc() || res.ptr != f.data() + f.size() || f.empty()) {
                std::ostringstream os;
                os << "series row " << li + 1 << ": cannot parse '" << f << "'";
                throw Error(ErrorKind::CorruptInput, os.str());
            }
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.rows.empty()) throw Error(ErrorKind::CorruptInput, "series has no data rows");
    return t;
}

std::vector<Criterion> plotted_criteria(const SeriesTable& t) {
    std::vector<Criterion> out;
    for (Criterion c : kAllCriteria) {
        const std::string n = to_string(c);
        if (t.find(n + "_integrand") >= 0 && t.find(n + "_integral") >= 0) out.push_back(c);
    }
    return out;
}

namespace {

void panel(std::ostringstream& os, const std::vector<double>& x, const std::vector<double>& y, double top,
           const std::string& label, const char* colour) {
    const double left = 80.0;
    const double width = 600.0;
    const double height = 170.0;
    double x0 = x.front();
    double x1 = x.back();
    double y0 = *std::min_element(y.begin(), y.end());
    double y1 = *std::max_element(y.begin(), y.end());
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width << "\" height=\"" << height
       << "\" fill=\"none\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << left << "\" y=\"" << top - 6 << "\" font-family=\"sans-serif\" font-size=\"12\">" << label
       << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
       << "font-size=\"10\">" << fmt("%.4g", y1) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << top + height << "\" text-anchor=\"end\" "
       << "font-family=\"sans-serif\" font-size=\"10\">" << fmt("%.4g", y0) << "</text>\n";
    os << "<text x=\"" << left << "\" y=\"" << top + height + 14 << "\" font-family=\"sans-serif\" font-size=\"10\">"
       << fmt("%.4g", x0) << "</text>\n";
    os << "<text x=\"" << left + width << "\" y=\"" << top + height + 14
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt("%.4g", x.back())
       << "</text>\n";
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double px = left + width * (x[i] - x0) / (x1 - x0);
        const double py = top + height - height * (y[i] - y0) / (y1 - y0);
        os << (i ? " " : "") << fmt("%.2f", px) << ',' << fmt("%.2f", py);
    }
    os << "\"/>\n";
}

}  // namespace

std::string svg_plot(const SeriesTable& t, Criterion c) {
    const std::string n = to_string(c);
    const auto x = t.column("time");
    const auto f = t.column(n + "_integrand");
    const auto cum = t.column(n + "_integral");
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" viewBox=\"0 0 720 480\">\n";
    os << "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
    os << "<text x=\"360\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" << n
       << "</text>\n";
    panel(os, x, f, 50.0, n + " integrand", "#1f77b4");
    panel(os, x, cum, 280.0, n + " running integral", "#d62728");
    os << "</svg>\n";
    return os.str();
}

std::string summary_json(const CriterionSeries& s, const std::vector<Criterion>& enabled) {
    Json j;
    j["schema"] = "eulerscope-summary/1";
    const SeriesMetadata& m = s.metadata();
    Json meta;
    meta["domain"] = m.domain;
    meta["grid"] = m.grid;
    meta["seed"] = m.seed;
    meta["triplet"] = m.triplet ? Json::array({m.triplet->lo, m.triplet->hi}) : Json(nullptr);
    meta["termination"] = m.termination;
    meta["termination_time"] = number(m.termination_time);
    meta["samples"] = s.size();
    j["metadata"] = meta;

    Json crit = Json::object();
    Json omitted = Json::object();
    for (Criterion c : kAllCriteria) {
        if (std::find(enabled.begin(), enabled.end(), c) == enabled.end()) {
            omitted[to_string(c)] = "disabled";
            continue;
        }
        const std::string why = omission_reason(s, c);
        if (!why.empty() || s.size() < 2) {
            omitted[to_string(c)] = why.empty() ? "fewer than two samples" : why;
            continue;
        }
        const auto f = s.integrand(c);
        Json e;
        e["integral"] = number(integral(s, c));
        e["error_estimate"] = number(integral_error_estimate(s, c));
        e["final_integrand"] = number(f.back());
        e["max_integrand"] = number(*std::max_element(f.begin(), f.end()));
        crit[to_string(c)] = e;
    }
    j["criteria"] = crit;
    j["omitted"] = omitted;

    if (crit.contains("mixed")) {
        const MixedIntegral mi = integral_mixed(s);
        j["mixed_parts"] = {{"omega1", number(mi.omega1_term)}, {"omega2", number(mi.omega2_term)}};
    }

    auto audit_json = [](const GronwallReport& g) {
        Json a;
        a["c1"] = g.c1;
        a["c2"] = g.c2;
        a["scale"] = number(g.scale);
        a["margin"] = number(g.margin);
        a["quadrature_error"] = number(g.quadrature_error);
        a["tolerance"] = number(g.tolerance);
        a["pass"] = g.pass;
        a["final_bound"] = number(g.bound.back());
        a["final_measured"] = number(g.measured.back());
        a["max_ratio"] = number(*std::max_element(g.ratio.begin(), g.ratio.end()));
        return a;
    };
    if (s.size() >= 2) {
        j["gronwall"] = audit_json(gronwall_audit(s));
        j["gronwall_local"] = s.available(Criterion::Mixed) ? audit_json(gronwall_audit_local(s)) : Json(nullptr);
    } else {
        j["gronwall"] = nullptr;
        j["gronwall_local"] = nullptr;
    }

    std::vector<double> w;
    for (const auto& r : s.reports()) w.push_back(r.linf_omega);
    const auto fit = fit_growth(s.times(), w);
    if (fit) {
        j["growth_fit"] = {{"exponent", number(fit->exponent)},
                           {"intercept", number(fit->intercept)},
                           {"window_start", number(fit->window_start)},
                           {"samples", fit->samples}};
    } else {
        j["growth_fit"] = nullptr;
    }
    return j.dump(2) + "\n";
}

std::string summary_text(const SeriesTable& t) {
    std::ostringstream os;
    const auto time = t.column("time");
    os << "samples: " << t.rows.size() << "\n";
    os << "time window: [" << fmt("%.17g", time.front()) << ", " << fmt("%.17g", time.back()) << "]\n";
    const auto present = plotted_criteria(t);
    for (Criterion c : kAllCriteria) {
        const std::string n = to_string(c);
        if (std::find(present.begin(), present.end(), c) == present.end()) {
            os << n << ": omitted (not present in the series)\n";
            continue;
        }
        const auto f = t.column(n + "_integrand");
        const auto cum = t.column(n + "_integral");
        os << n << ": integral " << fmt("%.17g", cum.back()) << ", final integrand " << fmt("%.17g", f.back())
           << ", max integrand " << fmt("%.17g", *std::max_element(f.begin(), f.end())) << "\n";
    }
    return os.str();
}

std::string read_text_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + p.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed for " + p.string());
}

std::vector<std::string> write_report(const std::filesystem::path& dir, const CriterionSeries& s,
                                      const std::vector<Criterion>& enabled) {
    std::vector<std::string> files;
    const SeriesTable t = make_table(s, enabled);
    write_text_file(dir / "series.csv", to_csv(t));
    files.push_back("series.csv");
    write_text_file(dir / "summary.json", summary_json(s, enabled));
    files.push_back("summary.json");
    // Plots come from the table as it reads back from disk, so that
    // regenerate_report produces identical bytes.
    const SeriesTable back = parse_csv(to_csv(t));
    for (Criterion c : plotted_criteria(back)) {
        const std::string name = std::string("plot_") + to_string(c) + ".svg";
        write_text_file(dir / name, svg_plot(back, c));
        files.push_back(name);
    }
    return files;
}

std::vector<std::string> regenerate_report(const std::filesystem::path& csv_path) {
    const SeriesTable t = parse_csv(read_text_file(csv_path));
    const auto dir = csv_path.parent_path();
    std::vector<std::string> files;
    for (Criterion c : plotted_criteria(t)) {
        const std::string name = std::string("plot_") + to_string(c) + ".svg";
        write_text_file(dir / name, svg_plot(t, c));
        files.push_back(name);
    }
    write_text_file(dir / "summary.txt", summary_text(t));
    files.push_back("summary.txt");
    return files;
}

}  // namespace eulerscope
