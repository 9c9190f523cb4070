#pragma once

#include <filesystem>
#include <string_view>

namespace formtrack {

/// Write content to path atomically (temp file in the same directory, then
/// rename), creating parent directories as needed. Throws IoError.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace formtrack
