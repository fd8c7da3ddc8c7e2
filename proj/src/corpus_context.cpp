#include "wcs/corpus_context.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <json.hpp>

#include "wcs/error.hpp"
#include "wcs/io.hpp"
#include "wcs/rng.hpp"
#include "wcs/utf8.hpp"

namespace wcs {

CorpusIndex CorpusIndex::load_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorKind::io, fmt::format("corpus directory {} not found", dir.string()));
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusDocument> docs;
  docs.reserve(files.size());
  for (const auto& f : files) {
    docs.push_back({f.stem().string(), utf8::sanitize(read_file(f))});
  }
  return from_documents(std::move(docs));
}

CorpusIndex CorpusIndex::from_documents(std::vector<CorpusDocument> docs) {
  std::sort(docs.begin(), docs.end(),
            [](const CorpusDocument& a, const CorpusDocument& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < docs.size(); ++i) {
    if (docs[i].id == docs[i - 1].id) {
      throw Error(ErrorKind::validation, fmt::format("duplicate document id '{}'", docs[i].id));
    }
  }
  CorpusIndex index;
  index.docs_ = std::move(docs);
  index.starts_.reserve(index.docs_.size());
  for (const auto& d : index.docs_) {
    index.starts_.push_back(index.total_bytes_);
    index.total_bytes_ += d.text.size();
  }
  return index;
}

std::pair<std::size_t, std::size_t> CorpusIndex::locate(std::uint64_t global) const {
  // Last document starting at or before `global`; empty documents are skipped
  // because the following document shares their start.
  auto it = std::upper_bound(starts_.begin(), starts_.end(), global);
  auto doc = static_cast<std::size_t>(it - starts_.begin()) - 1;
  return {doc, static_cast<std::size_t>(global - starts_[doc])};
}

const CorpusDocument* CorpusIndex::find(std::string_view doc_id) const {
  auto it = std::lower_bound(docs_.begin(), docs_.end(), doc_id,
                             [](const CorpusDocument& d, std::string_view id) { return d.id < id; });
  return it != docs_.end() && it->id == doc_id ? &*it : nullptr;
}

CoherenceRatios coherence_ratios(std::string_view text) {
  std::size_t chars = 0, letters = 0, breaks = 0, digits = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    const auto d = utf8::decode_at(text, pos);
    pos += d.len;
    ++chars;
    if (utf8::is_letter(d.cp)) ++letters;
    if (d.cp == '\n') ++breaks;
    if (d.cp >= '0' && d.cp <= '9') ++digits;
  }
  if (chars == 0) return {};
  const auto n = static_cast<double>(chars);
  return {static_cast<double>(letters) / n, static_cast<double>(breaks) / n,
          static_cast<double>(digits) / n};
}

bool heuristic_coherence(std::string_view prefix_text) {
  if (prefix_text.empty()) return false;
  const auto r = coherence_ratios(prefix_text);
  return r.alphabetic >= 0.6 && r.line_breaks <= 1.0 / 40.0 && r.digits <= 0.2;
}

namespace {

bool letter_before(std::string_view text, std::size_t pos) {
  return pos > 0 && utf8::is_letter(utf8::decode_before(text, pos).cp);
}

bool letter_at(std::string_view text, std::size_t pos) {
  return pos < text.size() && utf8::is_letter(utf8::decode_at(text, pos).cp);
}

std::string capitalized(std::string_view word) {
  std::string out(word);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

bool surface_matches(std::string_view candidate, std::string_view word, std::string_view cap) {
  return candidate == word || candidate == cap;
}

// Boundary-matched occurrences of `word` in `text`, ascending by position.
std::vector<std::size_t> occurrences_in(std::string_view text, std::string_view word) {
  std::vector<std::size_t> found;
  if (word.empty()) return found;
  const std::string cap = capitalized(word);
  const std::string_view tail = word.substr(1);
  // Scan on the case-invariant tail, then check the first letter.
  for (std::size_t pos = text.find(tail, 1); pos != std::string_view::npos;
       pos = text.find(tail, pos + 1)) {
    const std::size_t start = pos - 1;
    if (tail.empty() && pos == 0) continue;
    if (!surface_matches(text.substr(start, word.size()), word, cap)) continue;
    if (letter_before(text, start) || letter_at(text, start + word.size())) continue;
    found.push_back(start);
  }
  return found;
}

}  // namespace

bool matches_at(std::string_view text, std::size_t pos, std::string_view word) {
  if (word.empty() || pos + word.size() > text.size()) return false;
  if (!surface_matches(text.substr(pos, word.size()), word, capitalized(word))) return false;
  return !letter_before(text, pos) && !letter_at(text, pos + word.size());
}

ContextSearchResult search_contexts(const CorpusIndex& corpus, std::string_view word,
                                    const ContextSearchOptions& options,
                                    const CoherenceFilter& filter) {
  if (options.n_contexts == 0) {
    throw Error(ErrorKind::validation, "n_contexts must be at least 1");
  }
  if (corpus.empty()) throw Error(ErrorKind::validation, "corpus is empty");

  struct Occurrence {
    std::uint64_t global;
    std::size_t doc;
    std::size_t start;
  };
  std::vector<Occurrence> eligible;
  for (std::size_t d = 0; d < corpus.documents().size(); ++d) {
    const auto& text = corpus.documents()[d].text;
    for (std::size_t start : occurrences_in(text, word)) {
      // Too close to the start of the document: the search continues past it.
      if (!utf8::has_chars(text, start, options.min_prefix_chars)) continue;
      eligible.push_back({corpus.global_offset(d, start), d, start});
    }
  }

  ContextSearchResult result;
  result.occurrences = eligible.size();
  if (eligible.empty()) return result;

  enum class State : unsigned char { untried, taken, rejected };
  std::vector<State> state(eligible.size(), State::untried);
  std::size_t settled = 0;

  Rng rng(derive_seed(options.seed, word));
  while (result.samples.size() < options.n_contexts && result.trials < options.trial_budget &&
         settled < eligible.size()) {
    ++result.trials;
    auto [doc, local] = corpus.locate(rng.below(corpus.total_bytes()));
    const auto& text = corpus.documents()[doc].text;
    while (local < text.size() && utf8::is_continuation(static_cast<unsigned char>(text[local]))) {
      ++local;
    }
    const std::uint64_t from = corpus.global_offset(doc, local);
    auto it = std::lower_bound(eligible.begin(), eligible.end(), from,
                               [](const Occurrence& o, std::uint64_t g) { return o.global < g; });
    if (it == eligible.end()) it = eligible.begin();  // wrap to the corpus start
    const auto idx = static_cast<std::size_t>(it - eligible.begin());
    if (state[idx] != State::untried) continue;

    const auto& occ = *it;
    const auto& doc_text = corpus.documents()[occ.doc].text;
    const std::size_t prefix_start = utf8::back_chars(doc_text, occ.start, options.prefix_chars);
    std::string prefix(doc_text.substr(prefix_start, occ.start - prefix_start));
    ++settled;
    if (filter && !filter(prefix)) {
      state[idx] = State::rejected;
      continue;
    }
    state[idx] = State::taken;
    ContextSample sample;
    sample.word = std::string(word);
    sample.doc_id = corpus.documents()[occ.doc].id;
    sample.word_start = occ.start;
    sample.word_end = occ.start + word.size();
    sample.prefix_text = std::move(prefix);
    sample.context_id = static_cast<int>(result.samples.size());
    sample.surface = doc_text.substr(occ.start, word.size());
    result.samples.push_back(std::move(sample));
  }
  return result;
}

std::vector<ContextSample> find_contexts(const CorpusIndex& corpus, std::string_view word,
                                         const ContextSearchOptions& options,
                                         const CoherenceFilter& filter) {
  auto result = search_contexts(corpus, word, options, filter);
  if (result.samples.size() < options.n_contexts) {
    throw ShortageError(result.samples.size(), options.n_contexts,
                        fmt::format("not enough contexts for '{}'", word));
  }
  return std::move(result.samples);
}

std::string to_jsonl(const ContextSample& s) {
  nlohmann::ordered_json j;
  j["word"] = s.word;
  j["doc_id"] = s.doc_id;
  j["word_start"] = s.word_start;
  j["word_end"] = s.word_end;
  j["prefix_text"] = s.prefix_text;
  j["context_id"] = s.context_id;
  j["surface"] = s.surface;
  return j.dump();
}

void write_contexts(const std::filesystem::path& path, const std::vector<ContextSample>& samples) {
  std::string out;
  for (const auto& s : samples) {
    out += to_jsonl(s);
    out += '\n';
  }
  write_file(path, out);
}

std::vector<ContextSample> parse_contexts(std::string_view text) {
  std::vector<ContextSample> samples;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      ContextSample s;
      s.word = j.at("word").get<std::string>();
      s.doc_id = j.at("doc_id").get<std::string>();
      s.word_start = j.at("word_start").get<std::size_t>();
      s.word_end = j.at("word_end").get<std::size_t>();
      s.prefix_text = j.at("prefix_text").get<std::string>();
      s.context_id = j.at("context_id").get<int>();
      s.surface = j.contains("surface") ? j["surface"].get<std::string>() : s.word;
      if (s.word_end <= s.word_start || s.word_end - s.word_start != s.surface.size()) {
        throw ParseError(line_no, "word span does not match the word length");
      }
      samples.push_back(std::move(s));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(line_no, ex.what());
    }
  }
  return samples;
}

std::vector<ContextSample> read_contexts(const std::filesystem::path& path) {
  return parse_contexts(read_file(path));
}

}  // namespace wcs
