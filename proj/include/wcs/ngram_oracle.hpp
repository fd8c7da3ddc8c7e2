#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wcs/audit.hpp"
#include "wcs/tokenizer.hpp"

namespace wcs {

/// Add-alpha smoothed n-gram model over token ids, used as a deterministic
/// stand-in for a language model. The history is the last min(order-1,
/// context length) tokens; logits are log-probabilities with full support
/// over the vocabulary.
class NgramOracle final : public DistributionOracle {
 public:
  NgramOracle(std::size_t order, double alpha, std::size_t vocab_size,
              std::optional<TokenId> unknown_id = std::nullopt);

  // Counts every n-gram of length 1..order in the sequence.
  void train(std::span<const TokenId> sequence);

  std::size_t order() const { return order_; }
  double alpha() const { return alpha_; }
  std::size_t vocab_size() const override { return vocab_size_; }
  bool in_vocabulary(TokenId token) const override;

  std::vector<double> probabilities(std::span<const TokenId> context) const;
  std::vector<double> logits(std::span<const TokenId> context) const override;

 private:
  struct Continuations {
    std::uint64_t total = 0;
    std::unordered_map<TokenId, std::uint64_t> next;
  };
  static std::string key(std::span<const TokenId> history);

  std::size_t order_;
  double alpha_;
  std::size_t vocab_size_;
  std::optional<TokenId> unknown_id_;
  std::unordered_map<std::string, Continuations> counts_;
};

/// Tokenizes every training text and counts it. Throws Error(validation) for
/// an empty vocabulary or empty training set.
NgramOracle build_ngram_oracle(std::span<const std::string> training_texts, std::size_t order,
                               double alpha, const Tokenizer& tokenizer);

}  // namespace wcs
