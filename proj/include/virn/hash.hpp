#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace virn {

// FNV-1a 64-bit. Stable across platforms; used for artifact manifests and
// sweep resumption, not for security.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string to_hex(std::uint64_t value);

}  // namespace virn
