#include "wcs/align.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "wcs/error.hpp"

namespace wcs {

TokenPath align(const ContextSample& sample, const Tokenizer& tokenizer, std::size_t prefix_len) {
  if (prefix_len == 0) throw Error(ErrorKind::validation, "prefix length L must be at least 1");
  const std::string& surface = sample.surface.empty() ? sample.word : sample.surface;
  if (surface.empty()) throw Error(ErrorKind::validation, "empty word");

  const std::string full = sample.prefix_text + surface;
  const std::size_t word_start = sample.prefix_text.size();
  const auto spans = tokenizer.encode_spans(full);

  auto first = std::find_if(spans.begin(), spans.end(),
                            [&](const TokenSpan& s) { return s.end > word_start; });
  if (first == spans.end()) {
    throw Error(ErrorKind::alignment, fmt::format("no token covers '{}'", surface));
  }
  if (first->begin < word_start) {
    const auto fused = std::string_view(full).substr(first->begin, word_start - first->begin);
    const bool whitespace_only = fused.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
    if (!whitespace_only) {
      throw Error(ErrorKind::alignment,
                  fmt::format("boundary merge: first token of '{}' also covers '{}'", surface, fused));
    }
  }

  TokenPath path;
  path.word = sample.word;
  for (auto it = first; it != spans.end(); ++it) path.word_tokens.push_back(it->id);
  const auto n_before = static_cast<std::size_t>(first - spans.begin());
  const std::size_t take = std::min(prefix_len, n_before);
  for (auto it = first - static_cast<std::ptrdiff_t>(take); it != first; ++it) {
    path.prefix_tokens.push_back(it->id);
  }
  path.prefix_short = take < prefix_len;
  return path;
}

}  // namespace wcs
