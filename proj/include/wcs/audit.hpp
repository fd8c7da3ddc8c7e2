#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcs/align.hpp"
#include "wcs/distributions.hpp"

namespace wcs {

struct StepRecord {
  int step_index = 0;
  TokenId token_id = 0;
  StepStats stats;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// One (word, context) trial of the forced-path audit.
struct AuditRecord {
  std::string word;
  std::int64_t rank_in_band = 0;  // frequency rank of the word
  int context_id = 0;
  std::string doc_id;
  std::vector<StepRecord> steps;  // one per word token

  std::size_t n_word_tokens() const { return steps.size(); }

  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

struct StepQuery {
  std::string_view word;
  int context_id = 0;
  int step_index = 0;
  std::span<const TokenId> context;  // prefix tokens followed by earlier word tokens
  TokenId target = 0;
  std::span<const double> temperatures;  // ascending
};

/// Source of per-step statistics. Implementations must be deterministic and
/// safe for concurrent const use.
class StepOracle {
 public:
  virtual ~StepOracle() = default;
  virtual StepStats step(const StepQuery& query) const = 0;
  virtual bool in_vocabulary(TokenId token) const = 0;
};

/// Oracle backed by full next-token logits; statistics are derived by
/// softmax at each requested temperature.
class DistributionOracle : public StepOracle {
 public:
  StepStats step(const StepQuery& query) const override;
  virtual std::size_t vocab_size() const = 0;
  virtual std::vector<double> logits(std::span<const TokenId> context) const = 0;
};

struct TrialInfo {
  std::int64_t rank_in_band = 0;
  int context_id = 0;
  std::string doc_id;
};

/// Walks every token of the word's path, querying the oracle with the
/// ground-truth prefix each time. Traversal never stops early on a token
/// that would have been filtered out. Throws AuditError carrying the step.
AuditRecord audit_word_context(const TokenPath& path, const StepOracle& oracle,
                               std::span<const double> temperatures, const TrialInfo& trial);

/// 1 iff every step survives cfg, else 0.
int reachability(const AuditRecord& record, const FilterConfig& cfg);

// Sorted, de-duplicated, all positive; throws Error(domain) otherwise.
std::vector<double> normalize_temperatures(std::span<const double> temperatures);

}  // namespace wcs
