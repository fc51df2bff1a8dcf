#include "eulerscope/snapshot.hpp"

#include <bit>
#include <cstring>

#include "eulerscope/checksum.hpp"
#include "eulerscope/error.hpp"
#include "eulerscope/report.hpp"

namespace eulerscope {

static_assert(std::endian::native == std::endian::little, "EULB I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'E', 'U', 'L', 'B'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::string& out, T v) {
    char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    out.append(b, sizeof(T));
}

class Reader {
public:
    Reader(const std::string& bytes, std::size_t end, const std::string& name) : b_(bytes), end_(end), name_(name) {}

    template <class T>
    T get() {
        if (pos_ + sizeof(T) > end_) fail("truncated");
        T v;
        std::memcpy(&v, b_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }
    std::size_t pos() const { return pos_; }
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::CorruptInput, name_ + ": " + what);
    }

private:
    const std::string& b_;
    std::size_t end_;
    const std::string& name_;
    std::size_t pos_ = 0;
};

Parity parity_from(std::uint32_t v, const Reader& r) {
    if (v > 2) r.fail("invalid parity tag");
    return static_cast<Parity>(v);
}

}  // namespace

std::string encode_snapshot(const SnapshotData& s) {
    const Grid3& g = s.u.grid();
    const DomainKind kind = g.domain().kind();
    if (kind != DomainKind::Torus3 && kind != DomainKind::SlabChannelPeriodic && kind != DomainKind::Ball)
        throw Error(ErrorKind::UnsupportedKind, std::string("EULB cannot store a ") + to_string(kind) + " grid");
    std::string out;
    out.reserve(160 + 24 * g.size());
    out.append(kMagic, 4);
    put<std::uint32_t>(out, kVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(kind));
    for (int a = 0; a < 3; ++a) {
        const Axis& ax = g.axis(a);
        put<std::uint32_t>(out, static_cast<std::uint32_t>(ax.kind));
        put<std::uint64_t>(out, ax.n);
        put<double>(out, ax.lo);
        put<double>(out, ax.length);
    }
    for (int c = 0; c < 3; ++c) put<std::uint32_t>(out, static_cast<std::uint32_t>(s.u[c].parity()));
    put<double>(out, s.time);
    put<std::uint64_t>(out, s.step);
    put<std::uint64_t>(out, s.seed);
    put<std::uint64_t>(out, g.size());
    for (int c = 0; c < 3; ++c)
        out.append(reinterpret_cast<const char*>(s.u[c].values().data()), g.size() * sizeof(double));
    put<std::uint64_t>(out, fnv1a64(out));
    return out;
}

SnapshotData decode_snapshot(const std::string& bytes, const std::string& name) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw Error(ErrorKind::CorruptInput, name + ": bad magic (not an EULB snapshot)");
    if (bytes.size() < 12) throw Error(ErrorKind::CorruptInput, name + ": truncated");
    const std::size_t body = bytes.size() - 8;
    std::uint64_t stored;
    std::memcpy(&stored, bytes.data() + body, 8);
    Reader r(bytes, body, name);
    r.get<std::uint32_t>();  // magic
    if (r.get<std::uint32_t>() != kVersion) r.fail("unsupported EULB version");
    const auto kind = r.get<std::uint32_t>();
    std::array<Axis, 3> axes{};
    for (auto& ax : axes) {
        const auto k = r.get<std::uint32_t>();
        if (k > 2) r.fail("invalid axis kind");
        ax.kind = static_cast<AxisKind>(k);
        ax.n = r.get<std::uint64_t>();
        ax.lo = r.get<double>();
        ax.length = r.get<double>();
    }
    std::array<Parity, 3> parity{};
    for (auto& p : parity) p = parity_from(r.get<std::uint32_t>(), r);
    SnapshotData s{r.get<double>(), r.get<std::uint64_t>(), r.get<std::uint64_t>(),
                   VectorField(Grid3::torus(4, 1.0))};
    const auto count = r.get<std::uint64_t>();
    if (count != axes[0].n * axes[1].n * axes[2].n) r.fail("node count does not match the grid");
    if (body - r.pos() != 24 * count) r.fail("payload size does not match the node count (truncated?)");
    if (fnv1a64(bytes.data(), body) != stored) r.fail("checksum mismatch");

    DomainSpec domain = DomainSpec::ball();
    switch (static_cast<DomainKind>(kind)) {
        case DomainKind::Torus3:
            domain = DomainSpec::torus3(axes[0].length, axes[1].length, axes[2].length);
            break;
        case DomainKind::SlabChannelPeriodic:
            domain = DomainSpec::slab_channel_periodic(axes[0].length, axes[1].length, axes[2].length);
            break;
        case DomainKind::Ball:
            break;
        default:
            r.fail("unsupported domain kind");
    }
    Grid3 grid = [&] {
        try {
            return Grid3(domain, axes);
        } catch (const Error& e) {
            r.fail(std::string("invalid grid: ") + e.what());
        }
    }();
    VectorField u(grid, parity);
    std::size_t off = r.pos();
    for (int c = 0; c < 3; ++c) {
        std::memcpy(u[c].values().data(), bytes.data() + off, count * sizeof(double));
        off += count * sizeof(double);
    }
    s.u = std::move(u);
    return s;
}

void write_snapshot(const std::filesystem::path& p, const SnapshotData& s) { write_text_file(p, encode_snapshot(s)); }

SnapshotData read_snapshot(const std::filesystem::path& p) { return decode_snapshot(read_text_file(p), p.string()); }

}  // namespace eulerscope
