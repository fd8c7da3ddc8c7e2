#include "wcs/error.hpp"

#include <fmt/format.h>

namespace wcs {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::io:
      return 2;
    case ErrorKind::schema:
      return 3;
    default:
      return 1;
  }
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::shortage: return "shortage";
    case ErrorKind::io: return "io";
    case ErrorKind::schema: return "schema";
    case ErrorKind::domain: return "domain";
    case ErrorKind::alignment: return "alignment";
    case ErrorKind::vocabulary: return "vocabulary";
    case ErrorKind::replay_miss: return "replay-miss";
    case ErrorKind::oracle: return "oracle";
  }
  return "unknown";
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(ErrorKind::schema, fmt::format("line {}: {}", line, what)), line_(line) {}

ShortageError::ShortageError(std::size_t found, std::size_t needed, const std::string& what)
    : Error(ErrorKind::shortage,
            fmt::format("{} (found {}, needed {})", what, found, needed)),
      found_(found),
      needed_(needed) {}

}  // namespace wcs
