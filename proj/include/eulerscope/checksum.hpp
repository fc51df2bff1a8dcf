#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace eulerscope {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed = 0xcbf29ce484222325ULL);
inline std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

/// Checksum of a whole file. Errors: Io.
std::uint64_t file_checksum(const std::filesystem::path& p);

/// 16 lowercase hex digits.
std::string checksum_hex(std::uint64_t h);

}  // namespace eulerscope
