#include "wcs/ngram_oracle.hpp"

#include <cmath>
#include <cstring>

#include <fmt/format.h>

#include "wcs/error.hpp"

namespace wcs {

NgramOracle::NgramOracle(std::size_t order, double alpha, std::size_t vocab_size,
                         std::optional<TokenId> unknown_id)
    : order_(order), alpha_(alpha), vocab_size_(vocab_size), unknown_id_(unknown_id) {
  if (order_ < 1) throw Error(ErrorKind::validation, "n-gram order must be at least 1");
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
    throw Error(ErrorKind::validation, fmt::format("smoothing alpha must be positive, got {}", alpha_));
  }
  if (vocab_size_ == 0) throw Error(ErrorKind::validation, "n-gram oracle needs a non-empty vocabulary");
}

std::string NgramOracle::key(std::span<const TokenId> history) {
  std::string k(history.size() * sizeof(TokenId), '\0');
  if (!history.empty()) std::memcpy(k.data(), history.data(), k.size());
  return k;
}

bool NgramOracle::in_vocabulary(TokenId token) const {
  if (token < 0 || static_cast<std::size_t>(token) >= vocab_size_) return false;
  return !(unknown_id_ && token == *unknown_id_);
}

void NgramOracle::train(std::span<const TokenId> sequence) {
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const TokenId next = sequence[i];
    if (next < 0 || static_cast<std::size_t>(next) >= vocab_size_) {
      throw Error(ErrorKind::vocabulary, fmt::format("training token {} outside vocabulary", next));
    }
    for (std::size_t h = 0; h < order_ && h <= i; ++h) {
      auto& c = counts_[key(sequence.subspan(i - h, h))];
      ++c.total;
      ++c.next[next];
    }
  }
}

std::vector<double> NgramOracle::probabilities(std::span<const TokenId> context) const {
  const std::size_t h = std::min(order_ - 1, context.size());
  const auto it = counts_.find(key(context.subspan(context.size() - h, h)));
  const double v = static_cast<double>(vocab_size_);
  const double total = it == counts_.end() ? 0.0 : static_cast<double>(it->second.total);
  const double denom = total + alpha_ * v;
  std::vector<double> probs(vocab_size_, alpha_ / denom);
  if (it != counts_.end()) {
    for (const auto& [tok, n] : it->second.next) {
      probs[static_cast<std::size_t>(tok)] = (static_cast<double>(n) + alpha_) / denom;
    }
  }
  return probs;
}

std::vector<double> NgramOracle::logits(std::span<const TokenId> context) const {
  auto probs = probabilities(context);
  for (double& p : probs) p = std::log(p);
  return probs;
}

NgramOracle build_ngram_oracle(std::span<const std::string> training_texts, std::size_t order,
                               double alpha, const Tokenizer& tokenizer) {
  if (training_texts.empty()) throw Error(ErrorKind::validation, "no training texts for n-gram oracle");
  NgramOracle oracle(order, alpha, tokenizer.vocab_size(), tokenizer.unknown_id());
  for (const auto& text : training_texts) oracle.train(tokenizer.encode(text));
  return oracle;
}

}  // namespace wcs
