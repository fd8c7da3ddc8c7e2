#include "wcs/utf8.hpp"

namespace wcs::utf8 {

namespace {

// Length of the valid sequence at s[pos], or 0 if invalid.
std::size_t valid_sequence(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return 1;
  std::size_t len;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    min = 0x10000;
  } else {
    return 0;
  }
  if (pos + len > s.size()) return 0;
  char32_t cp = b0 & (0x7F >> len);
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if (!is_continuation(b)) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

}  // namespace

std::string sanitize(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t len = valid_sequence(bytes, pos);
    if (len == 0) {
      out += "\xEF\xBF\xBD";
      ++pos;
    } else {
      out.append(bytes.substr(pos, len));
      pos += len;
    }
  }
  return out;
}

Decoded decode_at(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return {0, 0};
  const auto b0 = static_cast<unsigned char>(s[pos]);
  std::size_t len = b0 < 0x80 ? 1 : (b0 & 0xE0) == 0xC0 ? 2 : (b0 & 0xF0) == 0xE0 ? 3 : 4;
  if (pos + len > s.size()) len = s.size() - pos;
  char32_t cp = len == 1 ? b0 : b0 & (0x7F >> len);
  for (std::size_t i = 1; i < len; ++i) {
    cp = (cp << 6) | (static_cast<unsigned char>(s[pos + i]) & 0x3F);
  }
  return {cp, len};
}

Decoded decode_before(std::string_view s, std::size_t pos) {
  if (pos == 0) return {0, 0};
  std::size_t start = pos - 1;
  while (start > 0 && pos - start < 4 && is_continuation(static_cast<unsigned char>(s[start]))) {
    --start;
  }
  auto d = decode_at(s, start);
  d.len = pos - start;
  return d;
}

bool is_letter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  return false;
}

std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += is_continuation(c) ? 0 : 1;
  return n;
}

std::size_t back_chars(std::string_view s, std::size_t end, std::size_t n) {
  std::size_t pos = end;
  while (n > 0 && pos > 0) {
    --pos;
    if (!is_continuation(static_cast<unsigned char>(s[pos]))) --n;
  }
  return pos;
}

bool has_chars(std::string_view s, std::size_t end, std::size_t n) {
  if (n == 0) return true;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < end; ++i) {
    if (!is_continuation(static_cast<unsigned char>(s[i])) && ++seen >= n) return true;
  }
  return false;
}

}  // namespace wcs::utf8
