#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wcs/audit.hpp"
#include "wcs/lexicon.hpp"

namespace wcs {

/// Aggregate coverage of one record set under one sampler configuration.
struct SweepPoint {
  FilterConfig cfg;
  double wcs = 0.0;
  double erased_fraction = 0.0;
  double words_reachable = 0.0;
  std::size_t n_trials = 0;
  std::size_t n_reachable = 0;        // trials with reachability 1
  std::size_t n_words = 0;
  std::size_t n_words_reachable = 0;  // words with at least one reachable context

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct WordScore {
  std::string word;
  std::int64_t rank = 0;
  FilterConfig cfg;
  double wcs_w = 0.0;
  std::size_t n_contexts = 0;
  std::size_t n_reachable = 0;

  friend bool operator==(const WordScore&, const WordScore&) = default;
};

SweepPoint wcs(std::span<const AuditRecord> records, const FilterConfig& cfg);

/// One score per distinct word, ordered by (rank, word).
std::vector<WordScore> wcs_per_word(std::span<const AuditRecord> records, const FilterConfig& cfg);

std::vector<SweepPoint> sweep(std::span<const AuditRecord> records,
                              std::span<const FilterConfig> configs);

struct SweepGrids {
  std::vector<double> top_p;
  std::vector<std::int64_t> top_k;
  std::vector<double> min_p;
  std::vector<double> temperatures;

  // Top-p 0.70..0.95 step 0.05 plus 0.99; Top-k 1..20; Min-p 0.01..0.10;
  // temperatures 0.7, 1.0, 1.5.
  static SweepGrids defaults();
  // All single-filter configs: Top-p, then Top-k, then Min-p, each
  // temperature-major.
  std::vector<FilterConfig> configs() const;
};

struct WordMean {
  std::string word;
  std::int64_t rank = 0;
  double mean = 0.0;
  std::size_t n_conditions = 0;  // (trace, config) pairs averaged over
};

/// Mean of wcs_w over every config and every trace in which the word occurs.
std::vector<WordMean> mean_word_reachability(std::span<const std::vector<AuditRecord>> traces,
                                             std::span<const FilterConfig> configs);

/// Pearson correlation coefficient. Throws Error(validation) on fewer than
/// two points, mismatched lengths or zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson r of ln(count) against the per-word mean. Needs >= 3 words, each
/// present in `lex` with a positive count.
double pearson_log_freq(std::span<const WordMean> word_means, std::span<const LexEntry> lex);

}  // namespace wcs
