#include "eulerscope/manifest.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include <json.hpp>

#include "eulerscope/checksum.hpp"
#include "eulerscope/error.hpp"
#include "eulerscope/report.hpp"

namespace eulerscope {

namespace {

using Json = nlohmann::ordered_json;

Json load(const std::filesystem::path& dir) {
    const auto p = dir / "manifest.json";
    try {
        return Json::parse(read_text_file(p));
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::CorruptInput, p.string() + ": " + e.what());
    }
}

}  // namespace

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::filesystem::path& dir, Manifest& m, const std::vector<std::string>& relative_paths) {
    m.files.clear();
    for (const auto& rel : relative_paths) {
        const auto p = dir / rel;
        std::error_code ec;
        const auto size = std::filesystem::file_size(p, ec);
        if (ec) throw Error(ErrorKind::Io, "cannot stat " + p.string());
        m.files.push_back({rel, size, checksum_hex(file_checksum(p))});
    }
    Json j;
    j["schema"] = "eulerscope-manifest/1";
    j["toolkit_version"] = kToolkitVersion;
    j["command"] = m.command;
    Json cfg = Json::object();
    for (const auto& [k, v] : m.config) cfg[k] = v;
    j["config"] = cfg;
    j["started"] = m.started;
    j["finished"] = m.finished;
    j["termination"] = m.termination;
    j["message"] = m.message;
    Json stats = Json::object();
    for (const auto& [k, v] : m.statistics) stats[k] = std::isfinite(v) ? Json(v) : Json(nullptr);
    j["statistics"] = stats;
    Json files = Json::array();
    for (const auto& f : m.files) files.push_back({{"path", f.path}, {"bytes", f.bytes}, {"fnv1a64", f.fnv1a64}});
    j["files"] = files;
    write_text_file(dir / "manifest.json", j.dump(2) + "\n");
}

std::map<std::string, std::string> read_manifest_config(const std::filesystem::path& dir) {
    const Json j = load(dir);
    std::map<std::string, std::string> out;
    if (!j.contains("config") || !j["config"].is_object())
        throw Error(ErrorKind::CorruptInput, (dir / "manifest.json").string() + ": no config block");
    for (const auto& [k, v] : j["config"].items())
        if (v.is_string()) out[k] = v.get<std::string>();
    return out;
}

std::vector<std::string> verify_manifest(const std::filesystem::path& dir) {
    const Json j = load(dir);
    std::vector<std::string> bad;
    if (!j.contains("files") || !j["files"].is_array())
        throw Error(ErrorKind::CorruptInput, (dir / "manifest.json").string() + ": no file inventory");
    for (const auto& f : j["files"]) {
        const std::string rel = f.at("path").get<std::string>();
        const auto p = dir / rel;
        std::error_code ec;
        const auto size = std::filesystem::file_size(p, ec);
        if (ec || size != f.at("bytes").get<std::uint64_t>() ||
            checksum_hex(file_checksum(p)) != f.at("fnv1a64").get<std::string>())
            bad.push_back(rel);
    }
    return bad;
}

}  // namespace eulerscope
