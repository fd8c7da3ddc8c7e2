#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wcs/tokenizer.hpp"

namespace wcs {

// Two temperatures within this distance name the same recorded setting.
inline constexpr double kTemperatureTolerance = 1e-9;
// Slack allowed on cum_excl + p_target <= 1.
inline constexpr double kMassEpsilon = 1e-9;

struct TemperatureStats {
  double p_target = 0.0;
  double p_max = 0.0;
  double cum_excl = 0.0;  // mass of the tokens ordered strictly before the target

  friend bool operator==(const TemperatureStats&, const TemperatureStats&) = default;
};

/// Sufficient statistics of one forced step: enough to decide Top-k, Top-p
/// and Min-p survival, alone or combined, at each recorded temperature.
struct StepStats {
  std::int64_t rank = 0;  // 1-based, shared by all temperatures
  std::vector<std::pair<double, TemperatureStats>> per_temperature;  // ascending T

  const TemperatureStats* find(double temperature) const;
  // Throws Error(validation) if the temperature was not recorded.
  const TemperatureStats& at(double temperature) const;

  friend bool operator==(const StepStats&, const StepStats&) = default;
};

/// A sampler configuration. Every set filter applies; none of them
/// renormalizes for the others.
struct FilterConfig {
  double temperature = 1.0;
  std::optional<std::int64_t> k;
  std::optional<double> p;
  std::optional<double> m;

  static FilterConfig top_k(std::int64_t k, double temperature);
  static FilterConfig top_p(double p, double temperature);
  static FilterConfig min_p(double m, double temperature);

  // Throws Error(domain) on an out-of-range field or when no filter is set.
  void validate() const;
  // "top_p", "top_k", "min_p", or a '+'-joined combination in that order.
  std::string sampler() const;
  // Bare value for a single filter, "p=0.8;k=20" style for combinations.
  std::string param() const;

  friend bool operator==(const FilterConfig&, const FilterConfig&) = default;
};

/// exp(logit/T) / sum exp(logit/T), computed after subtracting the max logit.
std::vector<double> softmax_at_temperature(std::span<const double> logits, double temperature);

struct TemperatureDistribution {
  double temperature;
  std::span<const double> probs;
};

/// Ranks `target` under the order (probability at the lowest temperature
/// descending, token id ascending) and accumulates the mass of the tokens
/// ahead of it at every temperature.
StepStats compute_step_stats(std::span<const TemperatureDistribution> distributions,
                             TokenId target);

bool survives_top_k(const StepStats& stats, std::int64_t k);
bool survives_top_p(const StepStats& stats, double p, double temperature);
bool survives_min_p(const StepStats& stats, double m, double temperature);
bool survives(const StepStats& stats, const FilterConfig& cfg);

// Shortest decimal that round-trips; whole numbers keep one decimal ("1.0").
std::string format_temperature(double temperature);

}  // namespace wcs
