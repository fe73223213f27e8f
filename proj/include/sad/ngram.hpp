#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace sad {

// Bigram language model with add-one smoothing over a closed vocabulary.
// Training tokens are lowercased whitespace tokens, one start context per
// corpus line. Out-of-vocabulary tokens map to a reserved <unk> symbol, so
// every conditional distribution is fully enumerable and the per-position
// rank and entropy are exact rather than top-k estimates.
class NgramModel {
 public:
  static NgramModel train(const std::string& corpus);

  struct PositionScore {
    double logprob;      // ln p(token | context), always < 0
    std::uint64_t rank;  // 1 + number of strictly more probable tokens
    double entropy;      // Shannon entropy of p(. | context), in nats
  };

  // context is a lowercased token (or kStartContext); token is lowercased.
  PositionScore score(const std::string& context, const std::string& token) const;

  // Draws a successor from the raw training counts (the empirical
  // distribution, no smoothing mass). Empty string for unseen contexts.
  std::string sample_next(const std::string& context, std::mt19937_64& rng) const;

  std::size_t vocab_size() const { return vocab_.size(); }
  bool in_vocab(const std::string& token) const;

  static const std::string kStartContext;
  static const std::string kUnknown;

 private:
  // std::map keeps iteration order (and thus sampling and entropy
  // summation) deterministic across platforms.
  std::map<std::string, std::map<std::string, std::uint32_t>> counts_;
  std::map<std::string, std::uint32_t> context_totals_;
  std::vector<std::string> vocab_;  // sorted; includes kUnknown
};

}  // namespace sad
