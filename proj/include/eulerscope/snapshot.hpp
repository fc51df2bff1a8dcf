#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "eulerscope/field.hpp"

namespace eulerscope {

/// EULB snapshot, little-endian:
///   "EULB", u32 version (1), u32 domain kind,
///   3 x (u32 axis kind, u64 n, f64 lo, f64 length), 3 x u32 parity,
///   f64 time, u64 step, u64 seed, u64 node count,
///   3 x count f64 (components x, y, z; x-fastest node order),
///   u64 FNV-1a of every preceding byte.
/// Supported domains: torus, periodic slab channel, ball.
struct SnapshotData {
    double time = 0.0;
    std::uint64_t step = 0;
    std::uint64_t seed = 0;
    VectorField u;
};

std::string encode_snapshot(const SnapshotData& s);
/// Errors: CorruptInput (bad magic, version, truncation, checksum) with `name` in the message.
SnapshotData decode_snapshot(const std::string& bytes, const std::string& name = "snapshot");

/// Errors: Io with the path.
void write_snapshot(const std::filesystem::path& p, const SnapshotData& s);
/// Errors: Io, CorruptInput naming the file.
SnapshotData read_snapshot(const std::filesystem::path& p);

}  // namespace eulerscope
