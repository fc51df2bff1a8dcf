#include "eulerscope/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "eulerscope/error.hpp"

namespace eulerscope {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kPi = 3.141592653589793;

const char* const kKeys[] = {
    "seed",           "domain.kind",      "domain.lx",         "domain.ly",
    "domain.lz",      "domain.height",    "grid.n",            "grid.nx",
    "grid.ny",        "grid.nz",          "solver.dt",         "solver.t_end",
    "solver.dealias", "solver.init",      "solver.amplitude",  "solver.slope",
    "solver.separation", "solver.core",   "solver.circulation", "solver.perturbation",
    "solver.epsilon", "solver.energy_blowup_factor", "monitor.every", "monitor.criteria",
    "monitor.triplet", "monitor.eps_dir", "output.dir",        "output.snapshot_every",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Entry {
    std::string value;
    int line;
};

class Entries {
public:
    Entries(std::map<std::string, Entry> m, std::string source) : m_(std::move(m)), source_(std::move(source)) {}

    bool has(const std::string& k) const { return m_.count(k) != 0; }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        std::ostringstream os;
        os << source_;
        if (auto it = m_.find(key); it != m_.end()) os << ":" << it->second.line;
        os << ": " << key << ": " << msg;
        throw Error(ErrorKind::Config, os.str());
    }

    std::string str(const std::string& k, const std::string& def) const {
        auto it = m_.find(k);
        return it == m_.end() ? def : it->second.value;
    }

    double real(const std::string& k, double def) const {
        auto it = m_.find(k);
        if (it == m_.end()) return def;
        const std::string& s = it->second.value;
        double v = 0.0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
            fail(k, "expected a finite number, got '" + s + "'");
        return v;
    }

    long long integer(const std::string& k, long long def) const {
        auto it = m_.find(k);
        if (it == m_.end()) return def;
        const std::string& s = it->second.value;
        long long v = 0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size()) fail(k, "expected an integer, got '" + s + "'");
        return v;
    }

    std::uint64_t uinteger(const std::string& k, std::uint64_t def) const {
        auto it = m_.find(k);
        if (it == m_.end()) return def;
        const std::string& s = it->second.value;
        std::uint64_t v = 0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size())
            fail(k, "expected a non-negative integer, got '" + s + "'");
        return v;
    }

    bool boolean(const std::string& k, bool def) const {
        auto it = m_.find(k);
        if (it == m_.end()) return def;
        const std::string& s = it->second.value;
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        fail(k, "expected true or false, got '" + s + "'");
    }

private:
    std::map<std::string, Entry> m_;
    std::string source_;
};

std::size_t grid_size(const Entries& e, const std::string& key, long long def) {
    const long long v = e.integer(key, def);
    if (v < 4) e.fail(key, "needs at least 4 nodes");
    if (v > 1025) e.fail(key, "exceeds the desk-scale limit");
    return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<Criterion> parse_criteria(const std::string& list) {
    std::vector<Criterion> out;
    if (trim(list) == "all") return {std::begin(kAllCriteria), std::end(kAllCriteria)};
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        const auto c = criterion_from_string(item);
        if (!c) throw Error(ErrorKind::Config, "unknown criterion '" + item + "'");
        if (std::find(out.begin(), out.end(), *c) == out.end()) out.push_back(*c);
    }
    if (out.empty()) throw Error(ErrorKind::Config, "criteria list is empty");
    return out;
}

Interval parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::Config, "expected 'a,b', got '" + text + "'");
    const std::string a = trim(text.substr(0, comma));
    const std::string b = trim(text.substr(comma + 1));
    Interval iv{0.0, 0.0};
    for (auto [s, v] : {std::pair{&a, &iv.lo}, std::pair{&b, &iv.hi}}) {
        const auto r = std::from_chars(s->data(), s->data() + s->size(), *v);
        if (s->empty() || r.ec != std::errc() || r.ptr != s->data() + s->size() || !std::isfinite(*v))
            throw Error(ErrorKind::Config, "expected 'a,b' with finite numbers, got '" + text + "'");
    }
    return iv;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
    std::map<std::string, Entry> raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Config, where() + "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw Error(ErrorKind::Config, where() + "missing key");
        if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys))
            throw Error(ErrorKind::Config, where() + "unknown key '" + key + "'");
        if (value.empty()) throw Error(ErrorKind::Config, where() + key + ": missing value");
        if (auto it = raw.find(key); it != raw.end())
            throw Error(ErrorKind::Config,
                        where() + "duplicate key '" + key + "' (first set on line " + std::to_string(it->second.line) + ")");
        raw.emplace(key, Entry{value, lineno});
    }
    const Entries e(std::move(raw), source);

    RunConfig c;
    const std::string kind = e.str("domain.kind", "torus3");
    const bool channel = kind == "channel" || kind == "slab_channel_periodic";
    if (!channel && kind != "torus3") e.fail("domain.kind", "expected torus3 or channel, got '" + kind + "'");

    const double lx = e.real("domain.lx", kTwoPi);
    const double ly = e.real("domain.ly", kTwoPi);
    const double lz = e.real("domain.lz", kTwoPi);
    const double height = e.real("domain.height", kPi);
    for (const char* k : {"domain.lx", "domain.ly", "domain.lz", "domain.height"})
        if (!(e.real(k, 1.0) > 0.0)) e.fail(k, "must be positive");
    if (channel && e.has("domain.lz")) e.fail("domain.lz", "not used by a channel (set domain.height)");
    if (!channel && e.has("domain.height")) e.fail("domain.height", "not used by a torus (set domain.lz)");

    const std::size_t n = grid_size(e, "grid.n", 32);
    const std::size_t nx = grid_size(e, "grid.nx", static_cast<long long>(n));
    const std::size_t ny = grid_size(e, "grid.ny", static_cast<long long>(n));
    const std::size_t nz = grid_size(e, "grid.nz", static_cast<long long>(channel ? n + 1 : n));
    for (auto [k, v] : {std::pair{"grid.nx", nx}, std::pair{"grid.ny", ny}})
        if (v % 2 != 0) e.fail(e.has(k) ? k : "grid.n", "periodic axes need an even node count");
    if (!channel && nz % 2 != 0) e.fail(e.has("grid.nz") ? "grid.nz" : "grid.n", "periodic axes need an even node count");
    if (channel && (nz - 1) % 2 != 0) e.fail(e.has("grid.nz") ? "grid.nz" : "grid.n", "channel needs an odd wall-to-wall node count");

    SolverConfig& s = c.solver;
    try {
        s.grid = channel ? Grid3::channel(nx, ny, nz, lx, ly, height) : Grid3::torus({nx, ny, nz}, {lx, ly, lz});
    } catch (const Error& err) {
        e.fail("grid.n", err.what());
    }
    s.dt = e.real("solver.dt", 1e-3);
    if (!(s.dt > 0.0)) e.fail("solver.dt", "must be positive");
    s.t_end = e.real("solver.t_end", 1.0);
    if (s.t_end < 0.0) e.fail("solver.t_end", "must be non-negative");
    s.dealias = e.boolean("solver.dealias", true);
    const std::string init = e.str("solver.init", channel ? "channel-taylor-green" : "taylor-green");
    try {
        s.init = init_kind_from_string(init);
    } catch (const Error&) {
        e.fail("solver.init", "unknown initial condition '" + init + "'");
    }
    const bool two_pi_xy = std::abs(lx - kTwoPi) < 1e-12 && std::abs(ly - kTwoPi) < 1e-12;
    switch (s.init) {
        case InitKind::TaylorGreen:
        case InitKind::AntiparallelTubes:
            if (channel || !two_pi_xy || std::abs(lz - kTwoPi) > 1e-12)
                e.fail("solver.init", std::string(to_string(s.init)) + " needs a torus of period 2 pi");
            break;
        case InitKind::ChannelTaylorGreen:
            if (!channel || !two_pi_xy)
                e.fail("solver.init", "channel-taylor-green needs a channel with 2 pi periods in x and y");
            break;
        case InitKind::RandomDivFree:
        case InitKind::Shear:
            break;
    }
    InitParams& p = s.params;
    p.amplitude = e.real("solver.amplitude", p.amplitude);
    p.slope = e.real("solver.slope", p.slope);
    p.separation = e.real("solver.separation", p.separation);
    p.core = e.real("solver.core", p.core);
    p.circulation = e.real("solver.circulation", p.circulation);
    p.perturbation = e.real("solver.perturbation", p.perturbation);
    p.epsilon = e.real("solver.epsilon", p.epsilon);
    s.energy_blowup_factor = e.real("solver.energy_blowup_factor", s.energy_blowup_factor);
    if (!(s.energy_blowup_factor > 1.0)) e.fail("solver.energy_blowup_factor", "must exceed 1");
    s.seed = e.uinteger("seed", 0);

    const long long every = e.integer("monitor.every", 10);
    if (every < 1) e.fail("monitor.every", "must be at least 1");
    c.monitor_every = static_cast<int>(every);
    s.output_every = c.monitor_every;
    const long long snap = e.integer("output.snapshot_every", every);
    if (snap < 0) e.fail("output.snapshot_every", "must be non-negative");
    if (snap > 0 && snap % every != 0) e.fail("output.snapshot_every", "must be a multiple of monitor.every");
    c.snapshot_every = static_cast<int>(snap);

    c.criteria_explicit = e.has("monitor.criteria");
    try {
        c.criteria = parse_criteria(e.str("monitor.criteria", "all"));
    } catch (const Error& err) {
        e.fail("monitor.criteria", err.what());
    }
    const std::string trip = e.str("monitor.triplet", "none");
    if (trip != "none") {
        try {
            c.triplet = parse_pair(trip);
            const auto t = make_slab_triplet(s.grid.domain(), c.triplet->lo, c.triplet->hi);
            const auto v = validate_triplet(t, s.grid.domain());
            if (!v.pass()) throw Error(ErrorKind::Config, "triplet rejected: " + v.failures.front());
        } catch (const Error& err) {
            e.fail("monitor.triplet", err.what());
        }
    }
    if (c.criteria_explicit && !c.triplet &&
        std::find(c.criteria.begin(), c.criteria.end(), Criterion::Mixed) != c.criteria.end())
        e.fail("monitor.criteria", "the mixed criterion needs monitor.triplet");
    c.eps_dir = e.real("monitor.eps_dir", c.eps_dir);
    if (!(c.eps_dir > 0.0 && c.eps_dir < 1.0)) e.fail("monitor.eps_dir", "must lie in (0, 1)");
    c.output_dir = e.str("output.dir", "run");

    std::string crit;
    for (Criterion k : c.criteria) crit += (crit.empty() ? "" : ",") + std::string(to_string(k));
    c.echo = {
        {"seed", std::to_string(s.seed)},
        {"domain.kind", channel ? "channel" : "torus3"},
        {"domain.lx", format_double(lx)},
        {"domain.ly", format_double(ly)},
        {channel ? "domain.height" : "domain.lz", format_double(channel ? height : lz)},
        {"grid.nx", std::to_string(nx)},
        {"grid.ny", std::to_string(ny)},
        {"grid.nz", std::to_string(nz)},
        {"solver.dt", format_double(s.dt)},
        {"solver.t_end", format_double(s.t_end)},
        {"solver.dealias", s.dealias ? "true" : "false"},
        {"solver.init", to_string(s.init)},
        {"solver.amplitude", format_double(p.amplitude)},
        {"solver.slope", format_double(p.slope)},
        {"solver.separation", format_double(p.separation)},
        {"solver.core", format_double(p.core)},
        {"solver.circulation", format_double(p.circulation)},
        {"solver.perturbation", format_double(p.perturbation)},
        {"solver.epsilon", format_double(p.epsilon)},
        {"solver.energy_blowup_factor", format_double(s.energy_blowup_factor)},
        {"monitor.every", std::to_string(c.monitor_every)},
        {"monitor.criteria", crit},
        {"monitor.triplet", c.triplet ? format_double(c.triplet->lo) + "," + format_double(c.triplet->hi) : "none"},
        {"monitor.eps_dir", format_double(c.eps_dir)},
        {"output.dir", c.output_dir},
        {"output.snapshot_every", std::to_string(c.snapshot_every)},
    };
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Config, path + ": cannot read configuration file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

}  // namespace eulerscope
