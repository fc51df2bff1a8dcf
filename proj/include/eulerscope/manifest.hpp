#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace eulerscope {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct ManifestFile {
    std::string path;  // relative to the output directory
    std::uint64_t bytes = 0;
    std::string fnv1a64;
};

/// manifest.json: command, version, config echo, timestamps, termination,
/// run statistics and the checksummed inventory of every emitted file.
struct Manifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::string started;
    std::string finished;
    std::string termination = "completed";
    std::string message;
    std::vector<std::pair<std::string, double>> statistics;
    std::vector<ManifestFile> files;
};

/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// Checksums `relative_paths` under `dir` into m.files and writes
/// dir/manifest.json. Errors: Io.
void write_manifest(const std::filesystem::path& dir, Manifest& m, const std::vector<std::string>& relative_paths);

/// Config echo of dir/manifest.json. Errors: Io, CorruptInput.
std::map<std::string, std::string> read_manifest_config(const std::filesystem::path& dir);

/// Files whose size or checksum no longer matches the manifest (missing files included).
std::vector<std::string> verify_manifest(const std::filesystem::path& dir);

}  // namespace eulerscope
