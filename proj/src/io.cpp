#include "wcs/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "wcs/error.hpp"

namespace wcs {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, fmt::format("cannot read {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, fmt::format("cannot write {}", path.string()));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::io, fmt::format("write failed for {}", path.string()));
}

}  // namespace wcs
