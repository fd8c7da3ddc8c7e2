#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcs/metrics.hpp"

namespace wcs {

using CsvRow = std::vector<std::string>;

// RFC 4180 style: fields containing ',', '"' or a line break are quoted.
std::string format_csv(std::span<const CsvRow> rows);
std::vector<CsvRow> parse_csv(std::string_view text);

// Shortest decimal representation that reads back to the same double.
std::string format_number(double value);

// Columns: sampler,param,temperature,wcs,words_reachable,erased_fraction,n_trials
std::string results_csv(std::span<const SweepPoint> points);
// Columns: word,rank,sampler,param,temperature,wcs_w,n_contexts
std::string per_word_csv(std::span<const WordScore> scores);

}  // namespace wcs
