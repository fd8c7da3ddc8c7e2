#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace wcs {

/// One occurrence of a target word together with the raw text preceding it.
/// Offsets are byte offsets into the sanitized document text.
struct ContextSample {
  std::string word;     // target word as selected (lowercase)
  std::string doc_id;
  std::size_t word_start = 0;
  std::size_t word_end = 0;
  std::string prefix_text;  // ends exactly at word_start
  int context_id = 0;
  std::string surface;      // document text in [word_start, word_end)

  friend bool operator==(const ContextSample&, const ContextSample&) = default;
};

struct CorpusDocument {
  std::string id;
  std::string text;  // valid UTF-8
};

/// Immutable in-memory corpus. Documents are kept in id order and addressed
/// through a single global byte space of size total_bytes().
class CorpusIndex {
 public:
  static CorpusIndex load_directory(const std::filesystem::path& dir);
  static CorpusIndex from_documents(std::vector<CorpusDocument> docs);

  const std::vector<CorpusDocument>& documents() const { return docs_; }
  std::uint64_t total_bytes() const { return total_bytes_; }
  bool empty() const { return total_bytes_ == 0; }

  std::uint64_t global_offset(std::size_t doc, std::size_t local) const {
    return starts_[doc] + local;
  }
  // Maps a global offset in [0, total_bytes) to (document index, local offset).
  std::pair<std::size_t, std::size_t> locate(std::uint64_t global) const;

  const CorpusDocument* find(std::string_view doc_id) const;

 private:
  std::vector<CorpusDocument> docs_;
  std::vector<std::uint64_t> starts_;
  std::uint64_t total_bytes_ = 0;
};

using CoherenceFilter = std::function<bool(std::string_view prefix_text)>;

// Rejects front-matter / index-like text: alphabetic ratio < 0.6, more than one
// line break per 40 characters, or digit ratio > 0.2. Empty text is rejected.
bool heuristic_coherence(std::string_view prefix_text);

struct CoherenceRatios {
  double alphabetic = 0.0;
  double line_breaks = 0.0;  // per character
  double digits = 0.0;
};
CoherenceRatios coherence_ratios(std::string_view text);

// True iff `text` holds `word` at `pos` (exact, or with only the first letter
// upper-cased) and neither neighbour is a letter.
bool matches_at(std::string_view text, std::size_t pos, std::string_view word);

struct ContextSearchOptions {
  std::size_t n_contexts = 10;
  std::size_t min_prefix_chars = 1024;
  std::size_t prefix_chars = 2048;
  std::uint64_t seed = 0;
  std::size_t trial_budget = 10000;
};

struct ContextSearchResult {
  std::vector<ContextSample> samples;
  std::size_t trials = 0;
  std::size_t occurrences = 0;  // boundary-matched occurrences with enough prefix
};

/// Random-entry forward search. Each trial draws a uniform byte offset,
/// moves to the first eligible occurrence at or after it (wrapping across
/// documents), and keeps it if the filter accepts its prefix and it was not
/// already taken. Returns whatever was found within the trial budget.
ContextSearchResult search_contexts(const CorpusIndex& corpus, std::string_view word,
                                    const ContextSearchOptions& options,
                                    const CoherenceFilter& filter);

/// As search_contexts, but throws ShortageError if fewer than n_contexts
/// samples were collected.
std::vector<ContextSample> find_contexts(const CorpusIndex& corpus, std::string_view word,
                                         const ContextSearchOptions& options,
                                         const CoherenceFilter& filter = heuristic_coherence);

std::string to_jsonl(const ContextSample& sample);
void write_contexts(const std::filesystem::path& path, const std::vector<ContextSample>& samples);
std::vector<ContextSample> read_contexts(const std::filesystem::path& path);
std::vector<ContextSample> parse_contexts(std::string_view text);

}  // namespace wcs
