#include "eulerscope/commands.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>

#include "eulerscope/config.hpp"
#include "eulerscope/manifest.hpp"
#include "eulerscope/monitor.hpp"
#include "eulerscope/report.hpp"
#include "eulerscope/series.hpp"
#include "eulerscope/snapshot.hpp"
#include "eulerscope/solver.hpp"
#include "eulerscope/verify.hpp"

namespace eulerscope {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::CorruptInput:
            return kExitCorrupt;
        case ErrorKind::DivergenceFailure:
        case ErrorKind::NonPeriodicSample:
        case ErrorKind::Inconsistency:
        case ErrorKind::Conditioning:
        case ErrorKind::InadmissibleField:
        case ErrorKind::DegenerateDirection:
        case ErrorKind::GraphFailure:
            return kExitNumerical;
        case ErrorKind::Io:
            return kExitInternal;
        default:
            return kExitUsage;
    }
}

fs::path resolve_output_dir(const std::string& configured) {
    const char* root = std::getenv(kOutputRootEnv);
    const fs::path p(configured);
    if (!root || !*root) return p;
    if (p.is_absolute()) return fs::path(root) / p.filename();
    return fs::path(root) / p;
}

OutputLock::OutputLock(const fs::path& dir) : path_(dir / ".eulerscope.lock") {
    const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        if (errno == EEXIST)
            throw Error(ErrorKind::Config, "output directory " + dir.string() + " is locked (" + path_.string() +
                                               " exists; another run is writing there)");
        throw Error(ErrorKind::Io, "cannot create lock " + path_.string() + ": " + std::strerror(errno));
    }
    const std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] const auto n = ::write(fd, pid.data(), pid.size());
    ::close(fd);
}

OutputLock::~OutputLock() {
    std::error_code ec;
    fs::remove(path_, ec);
}

namespace {

std::string grid_label(const Grid3& g) {
    const auto d = g.dims();
    return std::to_string(d[0]) + "x" + std::to_string(d[1]) + "x" + std::to_string(d[2]);
}

SeriesMetadata make_metadata(const Grid3& g, std::uint64_t seed, const std::optional<Interval>& triplet) {
    SeriesMetadata m;
    m.domain = to_string(g.domain().kind());
    m.grid = grid_label(g);
    m.seed = seed;
    m.triplet = triplet;
    return m;
}

MonitorOptions monitor_options(const Grid3& g, const std::optional<Interval>& triplet, double eps_dir) {
    MonitorOptions o;
    o.eps_dir = eps_dir;
    if (triplet) {
        CompatibleTriplet t = make_slab_triplet(g.domain(), triplet->lo, triplet->hi);
        const TripletValidation v = validate_triplet(t, g.domain());
        if (!v.pass()) throw Error(ErrorKind::Config, "triplet rejected: " + v.failures.front());
        o.triplet = std::move(t);
    }
    return o;
}

std::string snapshot_name(std::uint64_t step) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "snap_%010llu.eulb", static_cast<unsigned long long>(step));
    return buf;
}

double advective_cfl(const VectorField& u, double dt) {
    double c = 0.0;
    for (int a = 0; a < 3; ++a) c += u[a].max_abs() / u.grid().axis(a).spacing();
    return dt * c;
}

void print_integrals(std::ostream& out, const CriterionSeries& s, const std::vector<Criterion>& enabled) {
    if (s.size() < 2) {
        out << "fewer than two samples: no integrals\n";
        return;
    }
    char buf[160];
    for (Criterion c : enabled) {
        if (!s.available(c)) {
            out << "  " << to_string(c) << ": omitted\n";
            continue;
        }
        std::snprintf(buf, sizeof buf, "  %-9s integral %.12e  (quadrature estimate %.3e)\n", to_string(c),
                      integral(s, c), integral_error_estimate(s, c));
        out << buf;
    }
}

/// Runs `body`, mapping library errors to exit codes with a one-line diagnostic.
template <class F>
int guarded(std::ostream& err, const char* command, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "eulerscope " << command << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "eulerscope " << command << ": internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace

int cmd_simulate(const std::string& config_path, std::ostream& out, std::ostream& err) {
    return guarded(err, "simulate", [&]() -> int {
        const RunConfig cfg = load_config(config_path);
        const fs::path dir = resolve_output_dir(cfg.output_dir);
        std::error_code ec;
        fs::create_directories(dir / "snapshots", ec);
        if (ec) throw Error(ErrorKind::Io, "cannot create " + (dir / "snapshots").string() + ": " + ec.message());
        OutputLock lock(dir);
        for (const auto& entry : fs::directory_iterator(dir / "snapshots"))
            if (entry.path().extension() == ".eulb") fs::remove(entry.path());

        Manifest manifest;
        manifest.command = "simulate";
        manifest.config = cfg.echo;
        manifest.started = utc_timestamp();

        const Grid3& grid = cfg.solver.grid;
        const MonitorOptions opts = monitor_options(grid, cfg.triplet, cfg.eps_dir);
        CriterionSeries series(make_metadata(grid, cfg.solver.seed, cfg.triplet));
        std::vector<std::string> snapshots;
        std::optional<SnapshotData> pending;
        double max_cfl = 0.0;
        bool warned = false;

        auto write = [&](const SnapshotData& s) {
            const std::string name = "snapshots/" + snapshot_name(s.step);
            write_snapshot(dir / name, s);
            snapshots.push_back(name);
        };
        auto on_output = [&](const Snapshot& snap) {
            const double c = advective_cfl(snap.u, cfg.solver.dt);
            max_cfl = std::max(max_cfl, c);
            if (c > 0.5 && !warned) {
                err << "warning: CFL estimate " << c << " exceeds 0.5 at t = " << snap.time << "\n";
                warned = true;
            }
            series.append(record(snap.u, snap.time, opts));
            if (cfg.snapshot_every > 0) {
                SnapshotData s{snap.time, snap.step, cfg.solver.seed, snap.u};
                if (snap.step % static_cast<std::uint64_t>(cfg.snapshot_every) == 0) {
                    write(s);
                    pending.reset();
                } else {
                    pending = std::move(s);
                }
            }
        };

        RunSummary summary;
        int code = kExitOk;
        try {
            summary = run(cfg.solver, on_output);
            if (summary.termination == Termination::DivergenceFailure) code = kExitNumerical;
            manifest.termination = to_string(summary.termination);
            manifest.message = summary.message;
        } catch (const Error& e) {
            code = exit_code_for(e.kind());
            manifest.termination = "error";
            manifest.message = std::string(to_string(e.kind())) + ": " + e.what();
        }
        if (pending) write(*pending);
        series.metadata().termination = manifest.termination;

        std::vector<std::string> files;
        if (series.size() > 0) files = write_report(dir, series, cfg.criteria);
        files.insert(files.end(), snapshots.begin(), snapshots.end());
        manifest.finished = utc_timestamp();
        manifest.statistics = {{"steps", static_cast<double>(summary.steps)},
                               {"final_time", summary.final_time},
                               {"wall_seconds", summary.wall_seconds},
                               {"energy_initial", summary.energy_initial},
                               {"energy_final", summary.energy_final},
                               {"max_energy_drift", summary.max_energy_drift},
                               {"helicity_initial", summary.helicity_initial},
                               {"helicity_final", summary.helicity_final},
                               {"max_divergence", summary.max_divergence},
                               {"max_cfl", max_cfl},
                               {"samples", static_cast<double>(series.size())}};
        write_manifest(dir, manifest, files);

        out << "simulate: " << manifest.termination << " after " << summary.steps << " steps, t = "
            << summary.final_time << "\n";
        if (!manifest.message.empty()) out << "  " << manifest.message << "\n";
        out << "  relative energy drift " << summary.max_energy_drift << ", max divergence "
            << summary.max_divergence << "\n";
        print_integrals(out, series, cfg.criteria);
        out << "  output: " << dir.string() << "\n";
        if (code != kExitOk) err << "eulerscope simulate: " << manifest.termination << ": " << manifest.message << "\n";
        return code;
    });
}

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, "analyze", [&]() -> int {
        if (options.inputs.empty()) throw Error(ErrorKind::Parameter, "no input given");
        std::vector<fs::path> files;
        std::optional<fs::path> first_dir;
        std::map<std::string, std::string> recorded;
        for (const auto& in : options.inputs) {
            const fs::path p(in);
            if (fs::is_directory(p)) {
                if (!first_dir) first_dir = p;
                if (fs::exists(p / "manifest.json") && recorded.empty()) recorded = read_manifest_config(p);
                std::vector<fs::path> found;
                for (const fs::path& d : {p, p / "snapshots"}) {
                    if (!fs::is_directory(d)) continue;
                    for (const auto& e : fs::directory_iterator(d))
                        if (e.is_regular_file() && e.path().extension() == ".eulb") found.push_back(e.path());
                }
                std::sort(found.begin(), found.end());
                files.insert(files.end(), found.begin(), found.end());
            } else if (fs::is_regular_file(p)) {
                files.push_back(p);
            } else {
                throw Error(ErrorKind::Parameter, "no such file or directory: " + in);
            }
        }
        if (files.empty()) throw Error(ErrorKind::Parameter, "no EULB snapshots found in the input");

        std::vector<SnapshotData> snaps;
        for (const auto& f : files) {
            snaps.push_back(read_snapshot(f));
            if (snaps.size() > 1) {
                const auto& prev = snaps[snaps.size() - 2];
                const auto& cur = snaps.back();
                if (!(cur.time > prev.time))
                    throw Error(ErrorKind::Parameter, "ordering violation: " + f.string() + " (t = " +
                                                          std::to_string(cur.time) + ") does not follow t = " +
                                                          std::to_string(prev.time));
                if (!(cur.u.grid() == snaps.front().u.grid()))
                    throw Error(ErrorKind::Parameter, "grid mismatch: " + f.string());
            }
        }

        std::optional<Interval> triplet = options.triplet;
        double eps_dir = 1e-6;
        std::vector<Criterion> criteria(std::begin(kAllCriteria), std::end(kAllCriteria));
        try {
            if (!triplet && recorded.count("monitor.triplet") && recorded["monitor.triplet"] != "none")
                triplet = parse_pair(recorded["monitor.triplet"]);
            if (recorded.count("monitor.eps_dir")) eps_dir = std::stod(recorded["monitor.eps_dir"]);
            if (recorded.count("monitor.criteria")) criteria = parse_criteria(recorded["monitor.criteria"]);
        } catch (const std::invalid_argument&) {
            throw Error(ErrorKind::CorruptInput, "manifest config block is malformed");
        }
        if (options.triplet &&
            std::find(criteria.begin(), criteria.end(), Criterion::Mixed) == criteria.end())
            criteria.push_back(Criterion::Mixed);

        const Grid3& grid = snaps.front().u.grid();
        const MonitorOptions opts = monitor_options(grid, triplet, eps_dir);
        CriterionSeries series(make_metadata(grid, snaps.front().seed, triplet));
        for (const auto& s : snaps) series.append(record(s.u, s.time, opts));

        fs::path dir;
        if (!options.output.empty()) dir = resolve_output_dir(options.output);
        else if (std::getenv(kOutputRootEnv) && *std::getenv(kOutputRootEnv)) dir = resolve_output_dir("analysis");
        else dir = (first_dir ? *first_dir : files.front().parent_path()) / "analysis";
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
        OutputLock lock(dir);

        Manifest manifest;
        manifest.command = "analyze";
        manifest.started = utc_timestamp();
        for (const auto& f : files) manifest.config.push_back({"input", f.string()});
        manifest.config.push_back({"monitor.triplet", triplet ? std::to_string(triplet->lo) + "," +
                                                                    std::to_string(triplet->hi)
                                                              : "none"});
        const auto written = write_report(dir, series, criteria);
        manifest.finished = utc_timestamp();
        manifest.statistics = {{"samples", static_cast<double>(series.size())}};
        write_manifest(dir, manifest, written);

        out << "analyze: " << snaps.size() << " snapshots, t in [" << snaps.front().time << ", "
            << snaps.back().time << "]\n";
        print_integrals(out, series, criteria);
        out << "  output: " << dir.string() << "\n";
        return kExitOk;
    });
}

int cmd_verify(const std::string& suite, std::size_t n, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    return guarded(err, "verify", [&]() -> int {
        VerifyOptions o;
        o.n = n;
        o.seed = seed;
        const auto checks = run_verify(suite, o);
        out << format_checks(checks);
        const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; });
        out << "verify " << suite << ": " << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size()
            << " checks passed\n";
        return failed == 0 ? kExitOk : kExitNumerical;
    });
}

int cmd_report(const std::string& series_path, std::ostream& out, std::ostream& err) {
    return guarded(err, "report", [&]() -> int {
        if (!fs::is_regular_file(series_path)) throw Error(ErrorKind::Parameter, "no such series file: " + series_path);
        const auto written = regenerate_report(series_path);
        const fs::path dir = fs::path(series_path).parent_path();
        for (const auto& w : written) out << (dir / w).string() << "\n";
        return kExitOk;
    });
}

}  // namespace eulerscope
