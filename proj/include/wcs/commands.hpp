#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wcs/audit.hpp"
#include "wcs/config.hpp"
#include "wcs/corpus_context.hpp"
#include "wcs/lexicon.hpp"
#include "wcs/metrics.hpp"

namespace wcs {

// Every command writes its outputs under RunConfig::out, logs plain lines to
// `log`, and throws wcs::Error on failure (see exit_code()). Timestamps go
// only to a `<command>.meta.json` sidecar so the main outputs are
// reproducible byte for byte.

struct SelectWordsResult {
  TargetSet targets;
  std::filesystem::path output;
};
SelectWordsResult cmd_select_words(const RunConfig& config, std::ostream& log);

struct ExtractContextsResult {
  std::vector<ContextSample> samples;
  std::vector<std::pair<std::string, std::size_t>> shortages;  // (word, found)
  std::filesystem::path output;
};
/// Writes the contexts found, then throws ShortageError if any word came up
/// short and allow_short is off.
ExtractContextsResult cmd_extract_contexts(const RunConfig& config, std::ostream& log);

struct AuditResult {
  std::vector<AuditRecord> records;
  std::size_t attempted = 0;
  std::vector<std::string> failures;  // one line per failed trial
  std::filesystem::path output;
};
AuditResult cmd_audit(const RunConfig& config, std::ostream& log);

struct TraceSweep {
  std::string label;
  std::filesystem::path trace;
  std::vector<SweepPoint> points;
  std::vector<WordScore> word_scores;
  std::filesystem::path results_csv;
  std::filesystem::path per_word_csv;
};
struct SweepResult {
  std::vector<TraceSweep> traces;
  std::vector<std::filesystem::path> plots;
};
SweepResult cmd_sweep(const RunConfig& config, std::ostream& log);

struct ReportResult {
  nlohmann::ordered_json summary;
  std::filesystem::path output;
};
ReportResult cmd_report(const RunConfig& config, std::ostream& log);

// Sweep configurations for a run: the single-filter grids followed by the
// default settings not already on a grid.
std::vector<FilterConfig> sweep_configs(const RunConfig& config);

// Short names for trace files (file stems, de-duplicated).
std::vector<std::string> trace_labels(const std::vector<std::filesystem::path>& traces);

}  // namespace wcs
