#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "sad/ngram.hpp"
#include "sad/provider.hpp"

namespace sad {

// Fixed data behind the mock provider: the emotion lexicon (normalized token
// -> intensity weight), the synonym table used for paraphrasing, and the
// reference corpus the n-gram scoring model is trained on. The builtin set
// is embedded at build time from data/, so mock runs are reproducible on
// any machine with no files to locate.
struct MockData {
  std::map<std::string, double> lexicon;
  std::map<std::string, std::string> synonyms;
  std::string corpus;

  static const MockData& builtin();

  // Reads emotion_lexicon.tsv, synonyms.tsv and templates_*.txt from dir.
  static MockData load_dir(const std::filesystem::path& dir);
};

// Deterministic offline provider. Every operation is a pure function of its
// inputs (and seed), so outputs are byte-identical across runs, machines and
// thread counts.
//
//   rewrite_objective    deletes every lexicon-matched token
//   sentiment_intensity  clamp(5 * sum(lexicon weights) / token_count, 0, 1)
//   paraphrase_sentences seeded selection + synonym-table substitution
//   token_scores         exact scores from the smoothed bigram model
class MockProvider : public Provider {
 public:
  MockProvider();  // builtin data
  explicit MockProvider(MockData data);

  std::string provider_id() const override { return "mock"; }
  std::string model_id() const override { return "mock-ngram-2"; }
  std::string prompt_version() const override { return "mock-1"; }

  std::string rewrite_objective(const std::string& text) override;
  SentimentIntensity sentiment_intensity(const std::string& text,
                                         IntensitySource source) override;
  std::string paraphrase_sentences(const std::string& text, double fraction,
                                   std::uint64_t seed) override;
  std::vector<TokenScore> token_scores(const std::string& text) override;

  // 0 when the token (normalized) is not in the lexicon.
  double lexicon_weight(const std::string& token) const;

  const NgramModel& model() const { return model_; }
  const MockData& data() const { return data_; }

  // One sentence rewritten through the synonym table; exposed for reuse by
  // the paraphrase path and tests.
  std::string paraphrase_sentence(const std::string& sentence) const;

 private:
  MockData data_;
  NgramModel model_;
};

constexpr double kMockSentimentScale = 5.0;

}  // namespace sad
