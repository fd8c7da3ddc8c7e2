#include "wcs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include <fmt/format.h>

#include "wcs/error.hpp"

namespace wcs {

namespace {

struct WordTally {
  std::int64_t rank = 0;
  std::size_t contexts = 0;
  std::size_t reachable = 0;
};

// Per-word counts keyed and ordered by (rank, word).
std::map<std::pair<std::int64_t, std::string>, WordTally> tally(std::span<const AuditRecord> records,
                                                                const FilterConfig& cfg) {
  cfg.validate();
  std::map<std::pair<std::int64_t, std::string>, WordTally> words;
  for (const auto& r : records) {
    auto& t = words[{r.rank_in_band, r.word}];
    t.rank = r.rank_in_band;
    ++t.contexts;
    t.reachable += static_cast<std::size_t>(reachability(r, cfg));
  }
  return words;
}

}  // namespace

SweepPoint wcs(std::span<const AuditRecord> records, const FilterConfig& cfg) {
  if (records.empty()) throw Error(ErrorKind::validation, "no records");
  SweepPoint pt;
  pt.cfg = cfg;
  for (const auto& [key, t] : tally(records, cfg)) {
    pt.n_trials += t.contexts;
    pt.n_reachable += t.reachable;
    ++pt.n_words;
    if (t.reachable > 0) ++pt.n_words_reachable;
  }
  const auto words = static_cast<double>(pt.n_words);
  pt.wcs = static_cast<double>(pt.n_reachable) / static_cast<double>(pt.n_trials);
  pt.words_reachable = static_cast<double>(pt.n_words_reachable) / words;
  pt.erased_fraction = static_cast<double>(pt.n_words - pt.n_words_reachable) / words;
  return pt;
}

std::vector<WordScore> wcs_per_word(std::span<const AuditRecord> records, const FilterConfig& cfg) {
  std::vector<WordScore> out;
  for (const auto& [key, t] : tally(records, cfg)) {
    out.push_back({key.second, t.rank, cfg,
                   static_cast<double>(t.reachable) / static_cast<double>(t.contexts), t.contexts,
                   t.reachable});
  }
  return out;
}

std::vector<SweepPoint> sweep(std::span<const AuditRecord> records,
                              std::span<const FilterConfig> configs) {
  if (configs.empty()) throw Error(ErrorKind::validation, "no sweep configurations");
  std::vector<SweepPoint> out;
  out.reserve(configs.size());
  for (const auto& cfg : configs) out.push_back(wcs(records, cfg));
  return out;
}

SweepGrids SweepGrids::defaults() {
  SweepGrids g;
  // Built from integers so the grid values are the exact decimal doubles.
  for (int i = 70; i <= 95; i += 5) g.top_p.push_back(i / 100.0);
  g.top_p.push_back(0.99);
  for (std::int64_t k = 1; k <= 20; ++k) g.top_k.push_back(k);
  for (int i = 1; i <= 10; ++i) g.min_p.push_back(i / 100.0);
  g.temperatures = {0.7, 1.0, 1.5};
  return g;
}

std::vector<FilterConfig> SweepGrids::configs() const {
  std::vector<FilterConfig> out;
  for (double t : temperatures) {
    for (double p : top_p) out.push_back(FilterConfig::top_p(p, t));
  }
  for (double t : temperatures) {
    for (auto k : top_k) out.push_back(FilterConfig::top_k(k, t));
  }
  for (double t : temperatures) {
    for (double m : min_p) out.push_back(FilterConfig::min_p(m, t));
  }
  return out;
}

std::vector<WordMean> mean_word_reachability(std::span<const std::vector<AuditRecord>> traces,
                                             std::span<const FilterConfig> configs) {
  std::map<std::pair<std::int64_t, std::string>, std::pair<double, std::size_t>> acc;
  for (const auto& records : traces) {
    if (records.empty()) continue;
    for (const auto& cfg : configs) {
      for (const auto& ws : wcs_per_word(records, cfg)) {
        auto& [sum, n] = acc[{ws.rank, ws.word}];
        sum += ws.wcs_w;
        ++n;
      }
    }
  }
  std::vector<WordMean> out;
  for (const auto& [key, v] : acc) {
    out.push_back({key.second, key.first, v.first / static_cast<double>(v.second), v.second});
  }
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::validation, "pearson: length mismatch");
  if (x.size() < 2) throw Error(ErrorKind::validation, "pearson: need at least two points");
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
  };
  if (constant(x) || constant(y)) {
    throw Error(ErrorKind::validation, "correlation undefined: zero variance");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorKind::validation, "correlation undefined: zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pearson_log_freq(std::span<const WordMean> word_means, std::span<const LexEntry> lex) {
  if (word_means.size() < 3) {
    throw Error(ErrorKind::validation,
                fmt::format("correlation needs at least 3 words, got {}", word_means.size()));
  }
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& e : lex) counts.emplace(e.word, e.count);
  std::vector<double> x, y;
  for (const auto& wm : word_means) {
    const auto it = counts.find(wm.word);
    if (it == counts.end()) {
      throw Error(ErrorKind::validation, fmt::format("word '{}' missing from the lexicon", wm.word));
    }
    if (it->second == 0) {
      throw Error(ErrorKind::validation, fmt::format("word '{}' has a zero count", wm.word));
    }
    x.push_back(std::log(static_cast<double>(it->second)));
    y.push_back(wm.mean);
  }
  return pearson(x, y);
}

}  // namespace wcs
