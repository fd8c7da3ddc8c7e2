#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wcs {

using TokenId = std::int32_t;

/// A token and the byte range of the input it covers.
struct TokenSpan {
  TokenId id;
  std::size_t begin;
  std::size_t end;
};

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;

  virtual std::string name() const = 0;
  virtual std::size_t vocab_size() const = 0;
  // Spans tile the input: contiguous, in order, covering every byte.
  virtual std::vector<TokenSpan> encode_spans(std::string_view text) const = 0;
  virtual std::string decode(std::span<const TokenId> ids) const = 0;
  // Id emitted for text outside a closed vocabulary, if the tokenizer has one.
  virtual std::optional<TokenId> unknown_id() const { return std::nullopt; }

  std::vector<TokenId> encode(std::string_view text) const;
};

/// Splits text into pre-token chunks: an optional whitespace run followed by
/// a run of letters, a run of digits, or one other character. Whitespace at
/// the very end of the text forms its own chunk. Returns [begin, end) pairs.
std::vector<std::pair<std::size_t, std::size_t>> pretokenize(std::string_view text);

/// Closed-vocabulary word-level tokenizer. Each pre-token chunk (including
/// its leading whitespace) is one token; unseen chunks map to id 0, "<unk>".
class WordTokenizer final : public Tokenizer {
 public:
  static WordTokenizer build(std::span<const std::string> training_texts);
  explicit WordTokenizer(std::vector<std::string> vocab);  // vocab[0] is the unknown token

  std::string name() const override { return "word"; }
  std::size_t vocab_size() const override { return vocab_.size(); }
  std::vector<TokenSpan> encode_spans(std::string_view text) const override;
  std::string decode(std::span<const TokenId> ids) const override;
  std::optional<TokenId> unknown_id() const override { return 0; }

  const std::vector<std::string>& vocabulary() const { return vocab_; }

 private:
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, TokenId> index_;
};

/// One token per byte.
class ByteTokenizer final : public Tokenizer {
 public:
  std::string name() const override { return "byte"; }
  std::size_t vocab_size() const override { return 256; }
  std::vector<TokenSpan> encode_spans(std::string_view text) const override;
  std::string decode(std::span<const TokenId> ids) const override;
};

/// Merge-table BPE applied within pre-token chunks over code points. With an
/// empty merge table, chunks are segmented by greedy longest match against
/// the vocabulary instead.
class BpeTokenizer final : public Tokenizer {
 public:
  BpeTokenizer(std::vector<std::string> vocab,
               std::vector<std::pair<std::string, std::string>> merges);
  // JSON {"vocab": [string], "merges": [[string, string]]}.
  static BpeTokenizer load(const std::filesystem::path& path);
  static BpeTokenizer parse(std::string_view json_text);

  std::string name() const override { return "bpe"; }
  std::size_t vocab_size() const override { return vocab_.size(); }
  std::vector<TokenSpan> encode_spans(std::string_view text) const override;
  std::string decode(std::span<const TokenId> ids) const override;

  // Pieces of a single chunk, before id lookup.
  std::vector<std::string> segment(std::string_view chunk) const;

 private:
  std::vector<std::string> merge_segment(std::string_view chunk) const;
  std::vector<std::string> greedy_segment(std::string_view chunk) const;

  std::vector<std::string> vocab_;
  std::unordered_map<std::string, TokenId> index_;
  std::map<std::pair<std::string, std::string>, std::size_t> merge_rank_;
  std::size_t max_piece_bytes_ = 0;
};

/// "word" (vocabulary built from training_texts), "byte", or "bpe:<path>".
std::unique_ptr<Tokenizer> make_tokenizer(std::string_view spec,
                                          std::span<const std::string> training_texts);

}  // namespace wcs
