#include "wcs/config.hpp"

#include <charconv>
#include <set>

#include <fmt/format.h>

#include "wcs/error.hpp"
#include "wcs/io.hpp"

namespace wcs {

std::filesystem::path RunConfig::targets_path() const {
  return targets.empty() ? out / "targets.json" : targets;
}
std::filesystem::path RunConfig::contexts_path() const {
  return contexts.empty() ? out / "contexts.jsonl" : contexts;
}
std::filesystem::path RunConfig::trace_out_path() const {
  return trace_out.empty() ? out / "trace.jsonl" : trace_out;
}
std::vector<std::filesystem::path> RunConfig::trace_paths() const {
  if (traces.empty()) return {trace_out_path()};
  return traces;
}
std::filesystem::path RunConfig::lexicon_path() const {
  return lexicon.empty() ? targets_path() : lexicon;
}

std::vector<FilterConfig> RunConfig::default_sampler_settings() {
  return {parse_filter_config("p=0.8 k=20 T=0.7"), parse_filter_config("p=0.9 T=0.7"),
          parse_filter_config("p=0.95 k=64 T=1.0"), parse_filter_config("p=0.95 T=0.7")};
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto next = s.find_first_of(seps, pos);
    if (next == std::string_view::npos) next = s.size();
    auto part = trim(s.substr(pos, next - pos));
    if (!part.empty()) parts.push_back(part);
    pos = next + 1;
  }
  return parts;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(ErrorKind::validation, fmt::format("invalid value '{}' for '{}'", value, key));
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) bad_value(key, text);
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  bad_value(key, text);
}

std::vector<double> parse_doubles(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ",")) out.push_back(parse_number<double>(key, part));
  if (out.empty()) bad_value(key, text);
  return out;
}

// "1-20" or "1,2,5".
std::vector<std::int64_t> parse_ints(std::string_view key, std::string_view text) {
  std::vector<std::int64_t> out;
  for (auto part : split(text, ",")) {
    const auto dash = part.find('-', 1);
    if (dash != std::string_view::npos) {
      const auto lo = parse_number<std::int64_t>(key, part.substr(0, dash));
      const auto hi = parse_number<std::int64_t>(key, part.substr(dash + 1));
      if (hi < lo) bad_value(key, part);
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_number<std::int64_t>(key, part));
    }
  }
  if (out.empty()) bad_value(key, text);
  return out;
}

std::vector<std::filesystem::path> parse_paths(std::string_view text) {
  std::vector<std::filesystem::path> out;
  for (auto part : split(text, ",")) out.emplace_back(std::string(part));
  return out;
}

const std::set<std::string, std::less<>> kPathKeys = {
    "frequency_list", "dictionary", "corpus_dir", "targets", "contexts",
    "trace_out",      "traces",     "lexicon",    "out"};

std::string resolve(const std::filesystem::path& base, std::string_view p) {
  std::filesystem::path path{std::string(p)};
  return path.is_absolute() ? path.string() : (base / path).lexically_normal().string();
}

}  // namespace

ConfigMap parse_config_text(std::string_view text) {
  ConfigMap values;
  std::size_t line_no = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "empty key");
    values[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return values;
}

ConfigMap load_config_file(const std::filesystem::path& path) {
  auto values = parse_config_text(read_file(path));
  const auto base = path.parent_path();
  for (auto& [key, value] : values) {
    if (key == "traces") {
      std::string joined;
      for (auto part : split(value, ",")) {
        if (!joined.empty()) joined += ',';
        joined += resolve(base, part);
      }
      value = joined;
    } else if (kPathKeys.contains(key)) {
      value = resolve(base, value);
    } else if (key == "oracle" && value.starts_with("trace:")) {
      value = "trace:" + resolve(base, value.substr(6));
    } else if (key == "oracle" && value.starts_with("ngram:")) {
      // ngram:<dir>:<order>:<alpha>; the directory may itself contain ':'.
      const auto last = value.rfind(':');
      const auto mid = last == std::string::npos ? last : value.rfind(':', last - 1);
      if (mid != std::string::npos && mid > 6) {
        value = "ngram:" + resolve(base, value.substr(6, mid - 6)) + value.substr(mid);
      }
    } else if (key == "tokenizer" && value.starts_with("bpe:")) {
      value = "bpe:" + resolve(base, value.substr(4));
    }
  }
  return values;
}

FilterConfig parse_filter_config(std::string_view text) {
  FilterConfig cfg;
  bool have_t = false;
  for (auto part : split(text, " ,")) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) bad_value("filter", text);
    const auto name = part.substr(0, eq);
    const auto value = part.substr(eq + 1);
    if (name == "T") {
      cfg.temperature = parse_number<double>("T", value);
      have_t = true;
    } else if (name == "k") {
      cfg.k = parse_number<std::int64_t>("k", value);
    } else if (name == "p") {
      cfg.p = parse_number<double>("p", value);
    } else if (name == "m") {
      cfg.m = parse_number<double>("m", value);
    } else {
      bad_value("filter", text);
    }
  }
  if (!have_t) throw Error(ErrorKind::validation, fmt::format("filter '{}' lacks T=", text));
  cfg.validate();
  return cfg;
}

std::string describe(const FilterConfig& cfg) {
  std::string out;
  if (cfg.p) out += fmt::format("p={} ", *cfg.p);
  if (cfg.k) out += fmt::format("k={} ", *cfg.k);
  if (cfg.m) out += fmt::format("m={} ", *cfg.m);
  return out + "T=" + format_temperature(cfg.temperature);
}

RunConfig make_run_config(const ConfigMap& values) {
  RunConfig c;
  for (const auto& [key, value] : values) {
    if (key == "band_lo") {
      c.band_lo = parse_number<std::int64_t>(key, value);
    } else if (key == "band_hi") {
      c.band_hi = parse_number<std::int64_t>(key, value);
    } else if (key == "n_words") {
      c.n_words = parse_number<std::size_t>(key, value);
    } else if (key == "n_contexts") {
      c.n_contexts = parse_number<std::size_t>(key, value);
    } else if (key == "prefix_tokens") {
      c.prefix_tokens = parse_number<std::size_t>(key, value);
    } else if (key == "min_prefix_chars") {
      c.min_prefix_chars = parse_number<std::size_t>(key, value);
    } else if (key == "prefix_chars") {
      c.prefix_chars = parse_number<std::size_t>(key, value);
    } else if (key == "trial_budget") {
      c.trial_budget = parse_number<std::size_t>(key, value);
    } else if (key == "temperatures") {
      c.temperatures = parse_doubles(key, value);
      c.grids.temperatures = c.temperatures;
    } else if (key == "top_p_grid") {
      c.grids.top_p = parse_doubles(key, value);
    } else if (key == "top_k_grid") {
      c.grids.top_k = parse_ints(key, value);
    } else if (key == "min_p_grid") {
      c.grids.min_p = parse_doubles(key, value);
    } else if (key == "default_settings") {
      c.default_settings.clear();
      for (auto part : split(value, ";")) c.default_settings.push_back(parse_filter_config(part));
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "tokenizer") {
      c.tokenizer = value;
    } else if (key == "oracle") {
      c.oracle = value;
    } else if (key == "allow_short") {
      c.allow_short = parse_bool(key, value);
    } else if (key == "threads") {
      c.threads = parse_number<std::size_t>(key, value);
    } else if (key == "frequency_list") {
      c.frequency_list = value;
    } else if (key == "dictionary") {
      c.dictionary = value;
    } else if (key == "corpus_dir") {
      c.corpus_dir = value;
    } else if (key == "targets") {
      c.targets = value;
    } else if (key == "contexts") {
      c.contexts = value;
    } else if (key == "trace_out") {
      c.trace_out = value;
    } else if (key == "traces") {
      c.traces = parse_paths(value);
    } else if (key == "lexicon") {
      c.lexicon = value;
    } else if (key == "out") {
      c.out = value;
    } else {
      throw Error(ErrorKind::validation, fmt::format("unknown config key '{}'", key));
    }
  }
  for (double t : c.temperatures) {
    if (!(t > 0.0)) bad_value("temperatures", fmt::format("{}", t));
  }
  for (const auto& cfg : c.grids.configs()) cfg.validate();
  if (c.prefix_tokens == 0) bad_value("prefix_tokens", "0");
  return c;
}

}  // namespace wcs
