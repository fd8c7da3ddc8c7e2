#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace wcs {

// Whole-file read/write; both throw Error(io) naming the path on failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace wcs
