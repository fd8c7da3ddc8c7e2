#include "wcs/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include <fmt/format.h>

#include "wcs/error.hpp"
#include "wcs/io.hpp"
#include "wcs/rng.hpp"

namespace wcs {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Splits on '\n', dropping a trailing '\r' from each line. A final newline
// does not produce an empty last line.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_no, line);
    pos = nl + 1;
  }
}

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  });
}

}  // namespace

std::vector<LexEntry> parse_frequency_list(std::string_view text) {
  std::vector<LexEntry> entries;
  std::unordered_map<std::string, std::size_t> seen;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError(line_no, "missing tab separator");
    const auto word = line.substr(0, tab);
    const auto count_text = line.substr(tab + 1);
    if (word.empty() || has_whitespace(word)) {
      throw ParseError(line_no, "empty word or word containing whitespace");
    }
    std::uint64_t count = 0;
    const auto* end = count_text.data() + count_text.size();
    const auto [ptr, ec] = std::from_chars(count_text.data(), end, count);
    if (count_text.empty() || ec != std::errc{} || ptr != end) {
      throw ParseError(line_no, fmt::format("non-numeric count '{}'", count_text));
    }
    if (!entries.empty() && count > entries.back().count) {
      throw Error(ErrorKind::validation,
                  fmt::format("line {}: counts not sorted in descending order ({} after {})",
                              line_no, count, entries.back().count));
    }
    auto lowered = lowercase(word);
    if (auto [it, inserted] = seen.emplace(lowered, line_no); !inserted) {
      throw Error(ErrorKind::validation,
                  fmt::format("line {}: duplicate word '{}' (first seen on line {})", line_no,
                              lowered, it->second));
    }
    entries.push_back({std::move(lowered), static_cast<std::int64_t>(entries.size() + 1), count});
  });
  return entries;
}

std::vector<LexEntry> load_frequency_list(const std::filesystem::path& path) {
  return parse_frequency_list(read_file(path));
}

WordSet parse_dictionary(std::string_view text) {
  WordSet words;
  for_each_line(text, [&](std::size_t, std::string_view line) {
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (!line.empty()) words.insert(lowercase(line));
  });
  return words;
}

WordSet load_dictionary(const std::filesystem::path& path) {
  return parse_dictionary(read_file(path));
}

bool is_lexical(std::string_view word) {
  return !word.empty() && std::all_of(word.begin(), word.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  });
}

TargetSet select_targets(const std::vector<LexEntry>& entries, const WordSet& dict,
                         std::int64_t band_lo, std::int64_t band_hi, std::size_t n_words,
                         std::uint64_t seed) {
  if (band_lo >= band_hi) {
    throw Error(ErrorKind::validation,
                fmt::format("invalid rank band [{}, {}]", band_lo, band_hi));
  }
  TargetSet result{{}, seed, band_lo, band_hi};
  if (n_words == 0) return result;

  std::vector<const LexEntry*> candidates;
  for (const auto& e : entries) {
    if (e.rank < band_lo || e.rank > band_hi) continue;
    if (!is_lexical(e.word)) continue;
    if (!dict.contains(lowercase(e.word))) continue;
    candidates.push_back(&e);
  }
  // Input order is irrelevant to the draw.
  std::sort(candidates.begin(), candidates.end(),
            [](const LexEntry* a, const LexEntry* b) { return a->rank < b->rank; });
  if (candidates.size() < n_words) {
    throw ShortageError(candidates.size(), n_words,
                        fmt::format("not enough dictionary-valid words in rank band [{}, {}]",
                                    band_lo, band_hi));
  }

  // Partial Fisher-Yates: the first n_words slots end up a uniform sample.
  Rng rng(seed);
  for (std::size_t i = 0; i < n_words; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(n_words);
  std::sort(candidates.begin(), candidates.end(),
            [](const LexEntry* a, const LexEntry* b) { return a->rank < b->rank; });
  result.entries.reserve(n_words);
  for (const auto* e : candidates) result.entries.push_back(*e);
  return result;
}

nlohmann::ordered_json to_json(const std::vector<LexEntry>& entries) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    arr.push_back({{"word", e.word}, {"rank", e.rank}, {"count", e.count}});
  }
  return arr;
}

std::vector<LexEntry> lex_entries_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::schema, "target set must be a JSON array");
  std::vector<LexEntry> out;
  std::size_t i = 0;
  for (const auto& item : j) {
    ++i;
    try {
      out.push_back({item.at("word").get<std::string>(), item.at("rank").get<std::int64_t>(),
                     item.at("count").get<std::uint64_t>()});
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::schema, fmt::format("target set entry {}: {}", i, ex.what()));
    }
  }
  return out;
}

void write_target_set(const std::filesystem::path& path, const TargetSet& targets) {
  write_file(path, to_json(targets.entries).dump(2) + "\n");
}

std::vector<LexEntry> read_target_set(const std::filesystem::path& path) {
  const auto text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorKind::schema, fmt::format("{}: {}", path.string(), ex.what()));
  }
  return lex_entries_from_json(j);
}

}  // namespace wcs
