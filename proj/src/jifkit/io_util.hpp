#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace jifkit::detail {

std::string read_file(const std::filesystem::path& path);  // throws IoError

// Writes to a sibling temp file and renames over the target, so readers
// never observe a half-written file.
void atomic_write(const std::filesystem::path& path, std::string_view content);

// FNV-1a, 64 bit. Stable across platforms; used for input digests.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace jifkit::detail
