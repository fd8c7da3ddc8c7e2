#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wcs/audit.hpp"
#include "wcs/distributions.hpp"
#include "wcs/rng.hpp"

namespace wcs::test {

class TempDir {
 public:
  explicit TempDir(const std::string& tag = "wcs") {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            (tag + "_" + std::to_string(stamp) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline double uniform01(Rng& rng) { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; }

// A step whose statistics are the same at every temperature.
inline StepRecord flat_step(int index, std::int64_t rank, double p_target, double p_max,
                            double cum_excl, std::initializer_list<double> temps = {0.7, 1.0, 1.5}) {
  StepRecord s;
  s.step_index = index;
  s.token_id = static_cast<TokenId>(index + 1);
  s.stats.rank = rank;
  for (double t : temps) s.stats.per_temperature.emplace_back(t, TemperatureStats{p_target, p_max, cum_excl});
  return s;
}

inline StepRecord easy_step(int index) { return flat_step(index, 1, 0.9, 0.9, 0.0); }
// Fails every grid setting: rank > 20, cum_excl >= 0.99, p_target < 0.01 p_max.
inline StepRecord hard_step(int index) { return flat_step(index, 100, 0.001, 0.5, 0.995); }

inline AuditRecord make_record(std::string word, std::int64_t rank, int context_id,
                               std::vector<StepRecord> steps) {
  AuditRecord r;
  r.word = std::move(word);
  r.rank_in_band = rank;
  r.context_id = context_id;
  r.doc_id = "doc";
  r.steps = std::move(steps);
  return r;
}

// Logits for a random vocabulary of 2..64 tokens; about a third of the draws
// are coarsely quantized so that ties occur.
inline std::vector<double> random_logits(Rng& rng) {
  const std::size_t vocab = 2 + rng.below(63);
  const bool coarse = rng.below(3) == 0;
  std::vector<double> logits(vocab);
  for (auto& l : logits) {
    l = 8.0 * uniform01(rng) - 4.0;
    if (coarse) l = static_cast<double>(static_cast<int>(l));
  }
  return logits;
}

// Step statistics of a random target in a random distribution.
inline StepStats random_stats(Rng& rng, std::span<const double> temps) {
  const auto logits = random_logits(rng);
  std::vector<std::vector<double>> probs;
  std::vector<TemperatureDistribution> dists;
  for (double t : temps) probs.push_back(softmax_at_temperature(logits, t));
  for (std::size_t i = 0; i < temps.size(); ++i) dists.push_back({temps[i], probs[i]});
  return compute_step_stats(dists, static_cast<TokenId>(rng.below(logits.size())));
}

// Random record set: n_words words with 1..max_ctx contexts (exactly max_ctx
// when equal_contexts) and 1..3 steps each.
inline std::vector<AuditRecord> random_records(Rng& rng, std::size_t n_words, int max_ctx,
                                               bool equal_contexts = false) {
  static const double temps[] = {0.7, 1.0, 1.5};
  std::vector<AuditRecord> records;
  for (std::size_t w = 0; w < n_words; ++w) {
    const int n_ctx =
        equal_contexts ? max_ctx : 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_ctx)));
    const int n_steps = 1 + static_cast<int>(rng.below(3));
    for (int c = 0; c < n_ctx; ++c) {
      std::vector<StepRecord> steps;
      for (int i = 0; i < n_steps; ++i) {
        StepRecord s;
        s.step_index = i;
        s.token_id = i;
        s.stats = random_stats(rng, temps);
        steps.push_back(std::move(s));
      }
      records.push_back(make_record("w" + std::to_string(w), static_cast<std::int64_t>(w + 1), c,
                                    std::move(steps)));
    }
  }
  return records;
}

}  // namespace wcs::test
