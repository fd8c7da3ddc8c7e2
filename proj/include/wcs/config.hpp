#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wcs/distributions.hpp"
#include "wcs/metrics.hpp"

namespace wcs {

/// Settings shared by every subcommand. Defaults: 100 words from ranks
/// 10,000-40,000, 10 contexts each, a 256-token prefix and temperatures
/// 0.7 / 1.0 / 1.5.
struct RunConfig {
  std::int64_t band_lo = 10000;
  std::int64_t band_hi = 40000;
  std::size_t n_words = 100;
  std::size_t n_contexts = 10;
  std::size_t prefix_tokens = 256;
  std::size_t min_prefix_chars = 1024;
  std::size_t prefix_chars = 2048;
  std::size_t trial_budget = 10000;
  std::vector<double> temperatures{0.7, 1.0, 1.5};
  SweepGrids grids = SweepGrids::defaults();
  // Multi-filter settings reported as single rows (documented model defaults).
  std::vector<FilterConfig> default_settings = default_sampler_settings();
  std::uint64_t seed = 42;
  std::string tokenizer = "word";
  std::string oracle;  // ngram:<corpus-dir>:<order>:<alpha> | trace:<path>
  bool allow_short = false;
  std::size_t threads = 0;  // 0: hardware concurrency

  std::filesystem::path frequency_list;
  std::filesystem::path dictionary;
  std::filesystem::path corpus_dir;
  std::filesystem::path targets;   // default <out>/targets.json
  std::filesystem::path contexts;  // default <out>/contexts.jsonl
  std::filesystem::path trace_out; // default <out>/trace.jsonl
  std::vector<std::filesystem::path> traces;  // default {trace_out_path()}
  std::filesystem::path lexicon;   // default: targets
  std::filesystem::path out = ".";

  std::filesystem::path targets_path() const;
  std::filesystem::path contexts_path() const;
  std::filesystem::path trace_out_path() const;
  std::vector<std::filesystem::path> trace_paths() const;
  std::filesystem::path lexicon_path() const;

  static std::vector<FilterConfig> default_sampler_settings();
};

using ConfigMap = std::map<std::string, std::string>;

/// Flat `key = value` lines; '#' starts a comment. Later keys win.
ConfigMap parse_config_text(std::string_view text);

/// parse_config_text on a file, with relative paths resolved against the
/// file's directory.
ConfigMap load_config_file(const std::filesystem::path& path);

/// Builds a RunConfig from defaults overlaid with `values`. Unknown keys and
/// malformed values throw Error(validation).
RunConfig make_run_config(const ConfigMap& values);

// "p=0.8 k=20 T=0.7" (space or comma separated).
FilterConfig parse_filter_config(std::string_view text);
std::string describe(const FilterConfig& cfg);

}  // namespace wcs
