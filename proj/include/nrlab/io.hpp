/**
 * @file io.hpp
 * @brief File output helpers. All writes go through a temporary file and a rename.
 */
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace nrlab {

/// Write `content` to `path` atomically (temp file in the same directory + rename).
/// Parent directories are created. Throws std::runtime_error on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// printf-style "%.17g" formatting, used for every CSV number.
std::string fmt_g17(double v);

}  // namespace nrlab
