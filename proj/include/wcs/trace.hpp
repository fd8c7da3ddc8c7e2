#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "wcs/audit.hpp"

namespace wcs {

// Audit trace: JSONL, one record per line:
//   {"word", "rank_in_band", "context_id", "doc_id", "n_word_tokens",
//    "steps": [{"step_index", "token_id", "rank",
//               "temps": {"0.7": {"p_target", "p_max", "cum_excl"}, ...}}]}
// Lines whose object carries a "meta" key are metadata and are skipped.

nlohmann::ordered_json to_json(const AuditRecord& record);
std::string to_jsonl(const AuditRecord& record);
std::string serialize_trace(const std::vector<AuditRecord>& records);
void write_trace(const std::filesystem::path& path, const std::vector<AuditRecord>& records);

/// Strict loader. Schema problems and invariant violations throw ParseError
/// naming the 1-based line.
std::vector<AuditRecord> parse_trace(std::string_view text);
std::vector<AuditRecord> read_trace(const std::filesystem::path& path);

/// Checks the per-record invariants; returns a description of the first
/// violation, or nullopt when the record is consistent.
std::optional<std::string> check_record(const AuditRecord& record);

/// Replays precomputed step statistics keyed by (word, context_id, step_index).
class TraceOracle final : public StepOracle {
 public:
  explicit TraceOracle(std::vector<AuditRecord> records);

  StepStats step(const StepQuery& query) const override;
  bool in_vocabulary(TokenId) const override { return true; }

  const std::vector<AuditRecord>& records() const { return records_; }
  std::size_t step_count() const { return index_.size(); }

  // The word-token path recorded for a trial; the prefix is left empty since
  // the trace only identifies trials by key.
  std::optional<TokenPath> path_for(std::string_view word, int context_id) const;
  const AuditRecord* find(std::string_view word, int context_id) const;

 private:
  using Key = std::tuple<std::string, int, int>;
  std::vector<AuditRecord> records_;
  std::map<Key, const StepRecord*, std::less<>> index_;
  std::map<std::pair<std::string, int>, std::size_t, std::less<>> by_trial_;
};

TraceOracle build_trace_oracle(const std::filesystem::path& trace_path);

}  // namespace wcs
