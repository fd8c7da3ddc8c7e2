#include "wcs/tokenizer.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "wcs/error.hpp"
#include "wcs/io.hpp"
#include "wcs/utf8.hpp"

namespace wcs {

std::vector<TokenId> Tokenizer::encode(std::string_view text) const {
  std::vector<TokenId> ids;
  for (const auto& s : encode_spans(text)) ids.push_back(s.id);
  return ids;
}

namespace {

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v';
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> pretokenize(std::string_view text) {
  std::vector<std::pair<std::size_t, std::size_t>> chunks;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t begin = pos;
    while (pos < text.size() && is_space(utf8::decode_at(text, pos).cp)) ++pos;
    if (pos == text.size()) {
      chunks.emplace_back(begin, pos);
      break;
    }
    const auto first = utf8::decode_at(text, pos);
    pos += first.len;
    if (utf8::is_letter(first.cp)) {
      while (pos < text.size()) {
        const auto d = utf8::decode_at(text, pos);
        if (!utf8::is_letter(d.cp)) break;
        pos += d.len;
      }
    } else if (is_digit(first.cp)) {
      while (pos < text.size() && is_digit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    chunks.emplace_back(begin, pos);
  }
  return chunks;
}

// --- WordTokenizer ---------------------------------------------------------

WordTokenizer WordTokenizer::build(std::span<const std::string> training_texts) {
  std::set<std::string> pieces;
  for (const auto& text : training_texts) {
    for (auto [b, e] : pretokenize(text)) pieces.emplace(text.substr(b, e - b));
  }
  std::vector<std::string> vocab;
  vocab.reserve(pieces.size() + 1);
  vocab.emplace_back("<unk>");
  vocab.insert(vocab.end(), pieces.begin(), pieces.end());
  return WordTokenizer(std::move(vocab));
}

WordTokenizer::WordTokenizer(std::vector<std::string> vocab) : vocab_(std::move(vocab)) {
  if (vocab_.empty()) throw Error(ErrorKind::validation, "word vocabulary is empty");
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (!index_.emplace(vocab_[i], static_cast<TokenId>(i)).second) {
      throw Error(ErrorKind::validation, fmt::format("duplicate vocabulary entry '{}'", vocab_[i]));
    }
  }
}

std::vector<TokenSpan> WordTokenizer::encode_spans(std::string_view text) const {
  std::vector<TokenSpan> out;
  for (auto [b, e] : pretokenize(text)) {
    auto it = index_.find(std::string(text.substr(b, e - b)));
    out.push_back({it == index_.end() ? 0 : it->second, b, e});
  }
  return out;
}

std::string WordTokenizer::decode(std::span<const TokenId> ids) const {
  std::string out;
  for (TokenId id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab_.size()) {
      throw Error(ErrorKind::domain, fmt::format("token id {} out of range", id));
    }
    out += vocab_[static_cast<std::size_t>(id)];
  }
  return out;
}

// --- ByteTokenizer ---------------------------------------------------------

std::vector<TokenSpan> ByteTokenizer::encode_spans(std::string_view text) const {
  std::vector<TokenSpan> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    out.push_back({static_cast<TokenId>(static_cast<unsigned char>(text[i])), i, i + 1});
  }
  return out;
}

std::string ByteTokenizer::decode(std::span<const TokenId> ids) const {
  std::string out;
  out.reserve(ids.size());
  for (TokenId id : ids) {
    if (id < 0 || id > 255) throw Error(ErrorKind::domain, fmt::format("token id {} out of range", id));
    out += static_cast<char>(static_cast<unsigned char>(id));
  }
  return out;
}

// --- BpeTokenizer ----------------------------------------------------------

BpeTokenizer::BpeTokenizer(std::vector<std::string> vocab,
                           std::vector<std::pair<std::string, std::string>> merges)
    : vocab_(std::move(vocab)) {
  if (vocab_.empty()) throw Error(ErrorKind::validation, "BPE vocabulary is empty");
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (vocab_[i].empty()) throw Error(ErrorKind::schema, "BPE vocabulary contains an empty piece");
    if (!index_.emplace(vocab_[i], static_cast<TokenId>(i)).second) {
      throw Error(ErrorKind::schema, fmt::format("duplicate BPE vocabulary entry '{}'", vocab_[i]));
    }
    max_piece_bytes_ = std::max(max_piece_bytes_, vocab_[i].size());
  }
  for (std::size_t r = 0; r < merges.size(); ++r) {
    auto& [a, b] = merges[r];
    if (!index_.contains(a + b)) {
      throw Error(ErrorKind::schema,
                  fmt::format("merge {} ('{}', '{}') produces a piece missing from the vocabulary", r,
                              a, b));
    }
    merge_rank_.try_emplace({std::move(a), std::move(b)}, r);
  }
}

BpeTokenizer BpeTokenizer::parse(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    auto vocab = j.at("vocab").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> merges;
    if (j.contains("merges")) {
      for (const auto& m : j.at("merges")) {
        if (!m.is_array() || m.size() != 2) throw Error(ErrorKind::schema, "merge must be a pair");
        merges.emplace_back(m[0].get<std::string>(), m[1].get<std::string>());
      }
    }
    return BpeTokenizer(std::move(vocab), std::move(merges));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::schema, fmt::format("invalid BPE definition: {}", ex.what()));
  }
}

BpeTokenizer BpeTokenizer::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

std::vector<std::string> BpeTokenizer::merge_segment(std::string_view chunk) const {
  std::vector<std::string> symbols;
  for (std::size_t pos = 0; pos < chunk.size();) {
    const auto len = utf8::decode_at(chunk, pos).len;
    symbols.emplace_back(chunk.substr(pos, len));
    pos += len;
  }
  while (symbols.size() > 1) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    const std::pair<std::string, std::string>* best_pair = nullptr;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = merge_rank_.find({symbols[i], symbols[i + 1]});
      if (it != merge_rank_.end() && it->second < best) {
        best = it->second;
        best_pair = &it->first;
      }
    }
    if (!best_pair) break;
    // Merge every occurrence of the winning pair, left to right.
    std::vector<std::string> next;
    next.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i + 1 < symbols.size() && symbols[i] == best_pair->first &&
          symbols[i + 1] == best_pair->second) {
        next.push_back(symbols[i] + symbols[i + 1]);
        ++i;
      } else {
        next.push_back(std::move(symbols[i]));
      }
    }
    symbols = std::move(next);
  }
  return symbols;
}

std::vector<std::string> BpeTokenizer::greedy_segment(std::string_view chunk) const {
  std::vector<std::string> pieces;
  std::size_t pos = 0;
  while (pos < chunk.size()) {
    std::size_t len = std::min(max_piece_bytes_, chunk.size() - pos);
    for (; len > 0; --len) {
      if (index_.contains(std::string(chunk.substr(pos, len)))) break;
    }
    if (len == 0) len = utf8::decode_at(chunk, pos).len;  // reported missing at lookup
    pieces.emplace_back(chunk.substr(pos, len));
    pos += len;
  }
  return pieces;
}

std::vector<std::string> BpeTokenizer::segment(std::string_view chunk) const {
  return merge_rank_.empty() ? greedy_segment(chunk) : merge_segment(chunk);
}

std::vector<TokenSpan> BpeTokenizer::encode_spans(std::string_view text) const {
  std::vector<TokenSpan> out;
  for (auto [b, e] : pretokenize(text)) {
    std::size_t pos = b;
    for (const auto& piece : segment(text.substr(b, e - b))) {
      auto it = index_.find(piece);
      if (it == index_.end()) {
        throw Error(ErrorKind::vocabulary,
                    fmt::format("BPE piece '{}' is not in the vocabulary", piece));
      }
      out.push_back({it->second, pos, pos + piece.size()});
      pos += piece.size();
    }
  }
  return out;
}

std::string BpeTokenizer::decode(std::span<const TokenId> ids) const {
  std::string out;
  for (TokenId id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab_.size()) {
      throw Error(ErrorKind::domain, fmt::format("token id {} out of range", id));
    }
    out += vocab_[static_cast<std::size_t>(id)];
  }
  return out;
}

std::unique_ptr<Tokenizer> make_tokenizer(std::string_view spec,
                                          std::span<const std::string> training_texts) {
  if (spec == "word") return std::make_unique<WordTokenizer>(WordTokenizer::build(training_texts));
  if (spec == "byte") return std::make_unique<ByteTokenizer>();
  if (spec.starts_with("bpe:")) {
    return std::make_unique<BpeTokenizer>(BpeTokenizer::load(std::string(spec.substr(4))));
  }
  throw Error(ErrorKind::validation,
              fmt::format("unknown tokenizer '{}' (expected word, byte or bpe:<path>)", spec));
}

}  // namespace wcs
