#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

namespace wcs {

/// A word of a frequency-ranked list. Ranks are 1-based positions in
/// descending-count order; counts are raw corpus occurrences.
struct LexEntry {
  std::string word;
  std::int64_t rank = 0;
  std::uint64_t count = 0;

  friend bool operator==(const LexEntry&, const LexEntry&) = default;
};

using WordSet = std::unordered_set<std::string>;

struct TargetSet {
  std::vector<LexEntry> entries;  // ascending rank
  std::uint64_t seed = 0;
  std::int64_t band_lo = 0;
  std::int64_t band_hi = 0;
};

/// Reads a `word<TAB>count` list sorted by descending count; blank lines are
/// skipped and rank is the 1-based entry position. Throws ParseError for
/// malformed lines and Error(validation) for unsorted counts or duplicate words.
std::vector<LexEntry> load_frequency_list(const std::filesystem::path& path);
std::vector<LexEntry> parse_frequency_list(std::string_view text);

/// Lowercased, de-duplicated set of one-word-per-line entries.
WordSet load_dictionary(const std::filesystem::path& path);
WordSet parse_dictionary(std::string_view text);

// Letters-only after lowercasing: ^[a-z]+$.
bool is_lexical(std::string_view word);

/// Uniform sample without replacement of `n_words` entries whose rank lies
/// in [band_lo, band_hi], whose word is in `dict`, and which pass
/// is_lexical(). Deterministic in `seed`; output sorted by rank.
TargetSet select_targets(const std::vector<LexEntry>& entries, const WordSet& dict,
                         std::int64_t band_lo, std::int64_t band_hi, std::size_t n_words,
                         std::uint64_t seed);

nlohmann::ordered_json to_json(const std::vector<LexEntry>& entries);
std::vector<LexEntry> lex_entries_from_json(const nlohmann::json& j);

void write_target_set(const std::filesystem::path& path, const TargetSet& targets);
std::vector<LexEntry> read_target_set(const std::filesystem::path& path);

}  // namespace wcs
