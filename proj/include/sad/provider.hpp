#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sad/core.hpp"

namespace sad {

// Per-position statistics from the scoring model.
struct TokenScore {
  std::string token;
  double logprob = 0.0;       // ln p(actual token), <= 0
  std::uint64_t rank = 1;     // 1 = most probable token at this position
  bool rank_capped = false;   // true when only top-k alternatives were visible
  double entropy = 0.0;       // nats; a lower bound when estimated
  bool entropy_estimated = false;

  bool operator==(const TokenScore&) const = default;
};

// Capability bundle behind which both the remote LLM and the deterministic
// offline mock live: objectivity rewriting, sentiment-intensity scoring,
// sentence paraphrasing and per-token probability scoring.
//
// Implementations must be safe to share across concurrent callers, and
// (provider_id, model_id, prompt_version, operation, input) must be a
// stable cache identity.
class Provider {
 public:
  virtual ~Provider() = default;

  virtual std::string provider_id() const = 0;
  virtual std::string model_id() const = 0;
  virtual std::string prompt_version() const = 0;

  // Rewrites text to a more objective register, preserving propositional
  // content. Never returns an empty string.
  virtual std::string rewrite_objective(const std::string& text) = 0;

  virtual SentimentIntensity sentiment_intensity(
      const std::string& text, IntensitySource source = IntensitySource::Original) = 0;

  // Replaces ceil(fraction * sentence_count) sentences, chosen by a seeded
  // deterministic shuffle of sentence indices, with paraphrases. Unselected
  // sentences stay byte-identical; fraction 0 is the identity.
  virtual std::string paraphrase_sentences(const std::string& text, double fraction,
                                           std::uint64_t seed) = 0;

  // One TokenScore per scored token position. Throws EmptyTokenization when
  // the text has no tokens.
  virtual std::vector<TokenScore> token_scores(const std::string& text) = 0;
};

}  // namespace sad
