#include <doctest.h>

#include <set>
#include <string>

#include "support.hpp"
#include "wcs/corpus_context.hpp"
#include "wcs/error.hpp"
#include "wcs/io.hpp"
#include "wcs/utf8.hpp"

using namespace wcs;

namespace {

bool accept_all(std::string_view) { return true; }

ContextSearchOptions opts(std::size_t n, std::size_t min_prefix, std::uint64_t seed = 1) {
  ContextSearchOptions o;
  o.n_contexts = n;
  o.min_prefix_chars = min_prefix;
  o.prefix_chars = 2048;
  o.seed = seed;
  o.trial_budget = 1000;
  return o;
}

CorpusIndex single(std::string text) {
  return CorpusIndex::from_documents({{"doc", std::move(text)}});
}

std::string prose(std::size_t chars) {
  const std::string sentence = "The harbor lights were quiet while the sailors mended their nets. ";
  std::string out;
  while (out.size() < chars) out += sentence;
  // Ends in a space so a following word starts on a boundary.
  return out.substr(0, chars - 1) + " ";
}

}  // namespace

TEST_CASE("single occurrence with a short prefix") {
  const auto corpus = single("the old demon laughed");
  const auto s = find_contexts(corpus, "demon", opts(1, 4), accept_all);
  REQUIRE(s.size() == 1);
  CHECK(s[0].prefix_text == "the old ");
  CHECK(s[0].word_start == 8);
  CHECK(s[0].word_end == 13);
  CHECK(s[0].surface == "demon");
  CHECK(s[0].doc_id == "doc");
  CHECK(s[0].context_id == 0);
}

TEST_CASE("absent word is a shortage with nothing found") {
  const auto corpus = single("the old demon laughed");
  try {
    find_contexts(corpus, "angel", opts(1, 4), accept_all);
    FAIL("expected shortage");
  } catch (const ShortageError& e) {
    CHECK(e.found() == 0);
    CHECK(e.needed() == 1);
  }
}

TEST_CASE("word boundaries") {
  const std::string text = "concatenate cats cat.";
  CHECK_FALSE(matches_at(text, 3, "cat"));
  CHECK_FALSE(matches_at(text, 12, "cat"));
  CHECK(matches_at(text, 17, "cat"));
  const auto r = search_contexts(single(text), "cat", opts(3, 1), accept_all);
  CHECK(r.occurrences == 1);
  REQUIRE(r.samples.size() == 1);
  CHECK(r.samples[0].word_start == 17);

  CHECK(matches_at("Cat sat", 0, "cat"));
  CHECK_FALSE(matches_at("CAT sat", 0, "cat"));
  CHECK_FALSE(matches_at("écat", 2, "cat"));
  CHECK(matches_at("1cat", 1, "cat"));
}

TEST_CASE("minimum prefix length counts code points") {
  const auto corpus = single("ééé demon");
  CHECK(search_contexts(corpus, "demon", opts(1, 4), accept_all).samples.size() == 1);
  CHECK(search_contexts(corpus, "demon", opts(1, 5), accept_all).samples.empty());
}

TEST_CASE("prefix is trimmed to prefix_chars") {
  const auto corpus = single(prose(300) + "demon");
  auto o = opts(1, 10);
  o.prefix_chars = 50;
  const auto s = find_contexts(corpus, "demon", o, accept_all);
  CHECK(utf8::length(s[0].prefix_text) == 50);
  CHECK((s[0].prefix_text + "demon") == corpus.documents()[0].text.substr(250));
}

TEST_CASE("distinct contexts, deterministic per seed") {
  std::string text;
  for (int i = 0; i < 30; ++i) text += prose(120) + "lantern ";
  const auto corpus = CorpusIndex::from_documents({{"b", text}, {"a", text}});
  const auto a = find_contexts(corpus, "lantern", opts(10, 100, 5), accept_all);
  const auto b = find_contexts(corpus, "lantern", opts(10, 100, 5), accept_all);
  const auto c = find_contexts(corpus, "lantern", opts(10, 100, 6), accept_all);
  CHECK(a == b);
  CHECK(a != c);
  std::set<std::pair<std::string, std::size_t>> keys;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].context_id == static_cast<int>(i));
    keys.emplace(a[i].doc_id, a[i].word_start);
    const auto* doc = corpus.find(a[i].doc_id);
    REQUIRE(doc);
    CHECK(doc->text.substr(a[i].word_start, a[i].word_end - a[i].word_start) == "lantern");
    CHECK(doc->text.substr(0, a[i].word_start).ends_with(a[i].prefix_text));
  }
  CHECK(keys.size() == 10);
}

TEST_CASE("exhaustive search settles every occurrence") {
  std::string text = prose(200) + "anchor " + prose(200) + "anchor " + prose(200) + "anchor";
  const auto r = search_contexts(single(text), "anchor", opts(5, 100), accept_all);
  CHECK(r.occurrences == 3);
  CHECK(r.samples.size() == 3);
  CHECK(r.trials < 1000);
}

TEST_CASE("coherence heuristic") {
  CHECK(heuristic_coherence(prose(256)));
  std::string toc;
  for (int i = 0; i < 10; ++i) toc += "CHAPTER I ... 3\nCHAPTER II ... 9\n";
  CHECK_FALSE(heuristic_coherence(toc));
  CHECK_FALSE(heuristic_coherence(""));
  const auto r = coherence_ratios("ab\n1");
  CHECK(r.alphabetic == 0.5);
  CHECK(r.line_breaks == 0.25);
  CHECK(r.digits == 0.25);
}

TEST_CASE("corpus index addressing") {
  const auto corpus = CorpusIndex::from_documents({{"b", "world"}, {"a", "hello "}});
  CHECK(corpus.documents()[0].id == "a");
  CHECK(corpus.total_bytes() == 11);
  CHECK(corpus.locate(0) == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(corpus.locate(6) == std::pair<std::size_t, std::size_t>{1, 0});
  CHECK(corpus.global_offset(1, 2) == 8);
  CHECK(corpus.find("zzz") == nullptr);
  CHECK_THROWS_AS(CorpusIndex::from_documents({{"a", "x"}, {"a", "y"}}), Error);
}

TEST_CASE("directory loading sanitizes text and orders by file name") {
  test::TempDir dir;
  write_file(dir / "b.txt", "second");
  write_file(dir / "a.txt", std::string("bad \xff byte"));
  write_file(dir / "notes.md", "ignored");
  const auto corpus = CorpusIndex::load_directory(dir.path());
  REQUIRE(corpus.documents().size() == 2);
  CHECK(corpus.documents()[0].id == "a");
  CHECK(corpus.documents()[0].text == "bad \xEF\xBF\xBD byte");
  CHECK_THROWS_AS(CorpusIndex::load_directory(dir / "missing"), Error);
}

TEST_CASE("contexts JSONL round-trip and line-numbered errors") {
  test::TempDir dir;
  std::string text;
  for (int i = 0; i < 5; ++i) text += prose(80) + "Kettle \"q\" ";
  const auto samples = find_contexts(single(text), "kettle", opts(4, 20), accept_all);
  write_contexts(dir / "c.jsonl", samples);
  const auto bytes = read_file(dir / "c.jsonl");
  const auto back = read_contexts(dir / "c.jsonl");
  CHECK(back == samples);
  std::string again;
  for (const auto& s : back) again += to_jsonl(s) + "\n";
  CHECK(again == bytes);
  CHECK(back[0].surface == "Kettle");

  try {
    parse_contexts(to_jsonl(samples[0]) + "\n{\"word\":3}\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}
