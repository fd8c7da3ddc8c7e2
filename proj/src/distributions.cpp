#include "wcs/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "wcs/error.hpp"

namespace wcs {

const TemperatureStats* StepStats::find(double temperature) const {
  for (const auto& [t, s] : per_temperature) {
    if (std::abs(t - temperature) <= kTemperatureTolerance) return &s;
  }
  return nullptr;
}

const TemperatureStats& StepStats::at(double temperature) const {
  if (const auto* s = find(temperature)) return *s;
  throw Error(ErrorKind::validation,
              fmt::format("temperature {} not recorded", format_temperature(temperature)));
}

FilterConfig FilterConfig::top_k(std::int64_t k, double temperature) {
  FilterConfig c;
  c.temperature = temperature;
  c.k = k;
  return c;
}

FilterConfig FilterConfig::top_p(double p, double temperature) {
  FilterConfig c;
  c.temperature = temperature;
  c.p = p;
  return c;
}

FilterConfig FilterConfig::min_p(double m, double temperature) {
  FilterConfig c;
  c.temperature = temperature;
  c.m = m;
  return c;
}

void FilterConfig::validate() const {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorKind::domain, fmt::format("temperature must be positive, got {}", temperature));
  }
  if (!k && !p && !m) throw Error(ErrorKind::domain, "filter config sets none of k, p, m");
  if (k && *k < 1) throw Error(ErrorKind::domain, fmt::format("k must be >= 1, got {}", *k));
  if (p && !(*p > 0.0 && *p <= 1.0)) {
    throw Error(ErrorKind::domain, fmt::format("p must be in (0, 1], got {}", *p));
  }
  if (m && !(*m >= 0.0 && *m < 1.0)) {
    throw Error(ErrorKind::domain, fmt::format("m must be in [0, 1), got {}", *m));
  }
}

std::string FilterConfig::sampler() const {
  std::string out;
  auto add = [&](const char* name) {
    if (!out.empty()) out += '+';
    out += name;
  };
  if (p) add("top_p");
  if (k) add("top_k");
  if (m) add("min_p");
  return out;
}

std::string FilterConfig::param() const {
  const int set = int(p.has_value()) + int(k.has_value()) + int(m.has_value());
  if (set == 1) {
    if (p) return fmt::format("{}", *p);
    if (k) return fmt::format("{}", *k);
    return fmt::format("{}", *m);
  }
  std::string out;
  auto add = [&](std::string part) {
    if (!out.empty()) out += ';';
    out += part;
  };
  if (p) add(fmt::format("p={}", *p));
  if (k) add(fmt::format("k={}", *k));
  if (m) add(fmt::format("m={}", *m));
  return out;
}

std::vector<double> softmax_at_temperature(std::span<const double> logits, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorKind::domain, fmt::format("temperature must be positive, got {}", temperature));
  }
  if (logits.empty()) throw Error(ErrorKind::domain, "softmax of an empty logit vector");
  double max_logit = -INFINITY;
  for (double l : logits) {
    if (!std::isfinite(l)) throw Error(ErrorKind::domain, "non-finite logit");
    max_logit = std::max(max_logit, l);
  }
  std::vector<double> probs(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp((logits[i] - max_logit) / temperature);
    total += probs[i];
  }
  for (double& v : probs) v /= total;
  return probs;
}

namespace {

constexpr std::size_t kKahanThreshold = 100000;

double sequential_sum(std::span<const double> probs, std::span<const std::size_t> order) {
  if (order.size() <= kKahanThreshold) {
    double s = 0.0;
    for (auto i : order) s += probs[i];
    return s;
  }
  double s = 0.0, c = 0.0;
  for (auto i : order) {
    const double y = probs[i] - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace

StepStats compute_step_stats(std::span<const TemperatureDistribution> distributions,
                             TokenId target) {
  if (distributions.empty()) throw Error(ErrorKind::validation, "no distributions supplied");
  const std::size_t vocab = distributions.front().probs.size();
  for (const auto& d : distributions) {
    if (d.probs.size() != vocab) {
      throw Error(ErrorKind::validation,
                  fmt::format("shape mismatch: {} probabilities at T={} vs {}", d.probs.size(),
                              format_temperature(d.temperature), vocab));
    }
    const double total = std::accumulate(d.probs.begin(), d.probs.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-6) {
      throw Error(ErrorKind::domain,
                  fmt::format("distribution at T={} sums to {}", format_temperature(d.temperature),
                              total));
    }
  }
  if (target < 0 || static_cast<std::size_t>(target) >= vocab) {
    throw Error(ErrorKind::vocabulary,
                fmt::format("target token {} outside vocabulary of size {}", target, vocab));
  }

  std::vector<const TemperatureDistribution*> by_temp;
  for (const auto& d : distributions) by_temp.push_back(&d);
  std::sort(by_temp.begin(), by_temp.end(),
            [](const auto* a, const auto* b) { return a->temperature < b->temperature; });
  const auto& ref = by_temp.front()->probs;

  const auto t = static_cast<std::size_t>(target);
  auto ahead = [&](std::size_t a, std::size_t b) {
    return ref[a] > ref[b] || (ref[a] == ref[b] && a < b);
  };

  std::vector<std::size_t> before;
  std::size_t top = 0;
  for (std::size_t i = 0; i < vocab; ++i) {
    if (ahead(i, t)) before.push_back(i);
    if (ahead(i, top)) top = i;
  }
  std::sort(before.begin(), before.end(), ahead);

  StepStats stats;
  stats.rank = static_cast<std::int64_t>(before.size()) + 1;
  for (const auto* d : by_temp) {
    TemperatureStats ts;
    ts.p_target = d->probs[t];
    ts.p_max = d->probs[top];
    ts.cum_excl = sequential_sum(d->probs, before);
    stats.per_temperature.emplace_back(d->temperature, ts);
  }
  return stats;
}

bool survives_top_k(const StepStats& stats, std::int64_t k) {
  if (k < 1) throw Error(ErrorKind::domain, fmt::format("k must be >= 1, got {}", k));
  return stats.rank <= k;
}

bool survives_top_p(const StepStats& stats, double p, double temperature) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::domain, fmt::format("p must be in (0, 1], got {}", p));
  return stats.at(temperature).cum_excl < p;
}

bool survives_min_p(const StepStats& stats, double m, double temperature) {
  if (!(m >= 0.0 && m < 1.0)) throw Error(ErrorKind::domain, fmt::format("m must be in [0, 1), got {}", m));
  const auto& s = stats.at(temperature);
  return s.p_target >= m * s.p_max;
}

bool survives(const StepStats& stats, const FilterConfig& cfg) {
  const auto& s = stats.at(cfg.temperature);
  if (cfg.k && stats.rank > *cfg.k) return false;
  if (cfg.p && !(s.cum_excl < *cfg.p)) return false;
  if (cfg.m && !(s.p_target >= *cfg.m * s.p_max)) return false;
  return true;
}

std::string format_temperature(double temperature) {
  auto s = fmt::format("{}", temperature);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

}  // namespace wcs
