#include "wcs/audit.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "wcs/error.hpp"

namespace wcs {

StepStats DistributionOracle::step(const StepQuery& query) const {
  const auto raw = logits(query.context);
  std::vector<std::vector<double>> probs;
  probs.reserve(query.temperatures.size());
  for (double t : query.temperatures) probs.push_back(softmax_at_temperature(raw, t));
  std::vector<TemperatureDistribution> dists;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    dists.push_back({query.temperatures[i], probs[i]});
  }
  return compute_step_stats(dists, query.target);
}

std::vector<double> normalize_temperatures(std::span<const double> temperatures) {
  if (temperatures.empty()) throw Error(ErrorKind::domain, "no temperatures requested");
  std::vector<double> out(temperatures.begin(), temperatures.end());
  for (double t : out) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw Error(ErrorKind::domain, fmt::format("temperature must be positive, got {}", t));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) <= kTemperatureTolerance; }),
            out.end());
  return out;
}

AuditRecord audit_word_context(const TokenPath& path, const StepOracle& oracle,
                               std::span<const double> temperatures, const TrialInfo& trial) {
  if (path.word_tokens.empty()) {
    throw Error(ErrorKind::validation, fmt::format("empty token path for '{}'", path.word));
  }
  const auto temps = normalize_temperatures(temperatures);

  AuditRecord record;
  record.word = path.word;
  record.rank_in_band = trial.rank_in_band;
  record.context_id = trial.context_id;
  record.doc_id = trial.doc_id;

  std::vector<TokenId> context = path.prefix_tokens;
  context.reserve(path.prefix_tokens.size() + path.word_tokens.size());
  for (std::size_t i = 0; i < path.word_tokens.size(); ++i) {
    const TokenId target = path.word_tokens[i];
    if (!oracle.in_vocabulary(target)) {
      throw AuditError(ErrorKind::vocabulary, i,
                       fmt::format("'{}' step {}: token {} is outside the oracle vocabulary",
                                   path.word, i, target));
    }
    StepQuery query{path.word, trial.context_id, static_cast<int>(i), context, target, temps};
    try {
      record.steps.push_back({static_cast<int>(i), target, oracle.step(query)});
    } catch (const AuditError&) {
      throw;
    } catch (const Error& e) {
      throw AuditError(e.kind(), i, fmt::format("'{}' step {}: {}", path.word, i, e.what()));
    }
    context.push_back(target);
  }
  return record;
}

int reachability(const AuditRecord& record, const FilterConfig& cfg) {
  for (const auto& s : record.steps) {
    if (!survives(s.stats, cfg)) return 0;
  }
  return 1;
}

}  // namespace wcs
