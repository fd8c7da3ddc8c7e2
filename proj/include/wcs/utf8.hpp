#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace wcs::utf8 {

// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string sanitize(std::string_view bytes);

struct Decoded {
  char32_t cp;
  std::size_t len;  // bytes consumed; 0 only at end of input
};

// Decodes the code point starting at `pos`. Input must be valid UTF-8.
Decoded decode_at(std::string_view s, std::size_t pos);

// Decodes the code point ending just before `pos`.
Decoded decode_before(std::string_view s, std::size_t pos);

inline bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

// ASCII letters plus the Latin-1 / Latin Extended-A/B letter blocks.
bool is_letter(char32_t cp);

// Number of code points in s.
std::size_t length(std::string_view s);

// Byte offset of the start of the last `n` code points of s[0, end).
std::size_t back_chars(std::string_view s, std::size_t end, std::size_t n);

// True iff s[0, end) holds at least `n` code points.
bool has_chars(std::string_view s, std::size_t end, std::size_t n);

}  // namespace wcs::utf8
