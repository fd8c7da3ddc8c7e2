#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wcs/corpus_context.hpp"
#include "wcs/tokenizer.hpp"

namespace wcs {

/// Token path of one word occurrence: the last L context tokens and the
/// word's own tokens, both taken from a single tokenization of prefix+word.
struct TokenPath {
  std::vector<TokenId> prefix_tokens;
  std::vector<TokenId> word_tokens;  // never empty
  std::string word;
  bool prefix_short = false;  // fewer than L tokens precede the word

  std::size_t n_word_tokens() const { return word_tokens.size(); }
};

/// Tokenizes prefix_text + surface and splits it at the word start. The
/// word's first token may absorb whitespace immediately before the word;
/// any other merge across the boundary throws Error(alignment).
TokenPath align(const ContextSample& sample, const Tokenizer& tokenizer, std::size_t prefix_len);

}  // namespace wcs
