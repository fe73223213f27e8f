#include "sad/synthetic.hpp"

#include <algorithm>
#include <random>

#include "sad/builtin_data.hpp"
#include "sad/mock_provider.hpp"
#include "sad/ngram.hpp"
#include "sad/util.hpp"

namespace sad {

namespace {

bool ends_sentence(const std::string& token) {
  if (token.empty()) return false;
  char c = token.back();
  return c == '.' || c == '!' || c == '?';
}

// Single sentences from one domain's template file (two-sentence lines are
// split so each pool entry is one sentence).
std::vector<std::string> sentence_pool(std::string_view templates) {
  std::vector<std::string> pool;
  std::size_t start = 0;
  while (start < templates.size()) {
    auto end = templates.find('\n', start);
    if (end == std::string_view::npos) end = templates.size();
    std::string line{templates.substr(start, end - start)};
    for (auto& sentence : split_sentences(line)) {
      auto tokens = tokenize_ws(sentence);
      if (tokens.empty()) continue;
      std::string joined;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) joined.push_back(' ');
        joined += tokens[i];
      }
      pool.push_back(std::move(joined));
    }
    start = end + 1;
  }
  return pool;
}

// Replaces the token with a lexicon word, carrying over any trailing
// punctuation so sentence boundaries survive.
void inject_emotion(std::string& token, const std::vector<std::string>& emotion_words,
                    std::mt19937_64& rng) {
  std::string trail;
  while (!token.empty() && (token.back() == '.' || token.back() == '!' || token.back() == '?' ||
                            token.back() == ',' || token.back() == ';')) {
    trail.insert(trail.begin(), token.back());
    token.pop_back();
  }
  token = emotion_words[uniform_index(rng, emotion_words.size())] + trail;
}

double jittered_density(double base, double jitter, std::mt19937_64& rng) {
  double density = base + jitter * (2.0 * uniform_unit(rng) - 1.0);
  return std::clamp(density, 0.0, 1.0);
}

std::string human_text(const std::vector<std::string>& pool,
                       const std::vector<std::string>& emotion_words, const SynthConfig& config,
                       std::mt19937_64& rng) {
  int n_sentences =
      config.min_sentences +
      static_cast<int>(uniform_index(
          rng, static_cast<std::size_t>(config.max_sentences - config.min_sentences + 1)));
  double density =
      jittered_density(config.human_emotion_density, config.human_density_jitter, rng);
  std::string text;
  for (int s = 0; s < n_sentences; ++s) {
    auto tokens = tokenize_ws(pool[uniform_index(rng, pool.size())]);
    // Word-order noise among the non-final tokens; keeps human text off the
    // model's high-probability paths without touching its token counts.
    if (tokens.size() >= 3) {
      for (int swap = 0; swap < config.human_word_order_swaps; ++swap) {
        auto i = uniform_index(rng, tokens.size() - 1);
        auto j = uniform_index(rng, tokens.size() - 1);
        std::swap(tokens[i], tokens[j]);
      }
    }
    for (auto& token : tokens) {
      if (uniform_unit(rng) < density) {
        inject_emotion(token, emotion_words, rng);
      }
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!text.empty()) text.push_back(' ');
      text += tokens[i];
    }
  }
  return text;
}

std::string machine_text(const NgramModel& model,
                         const std::vector<std::string>& emotion_words,
                         const SynthConfig& config, std::mt19937_64& rng) {
  int n_sentences =
      config.min_sentences +
      static_cast<int>(uniform_index(
          rng, static_cast<std::size_t>(config.max_sentences - config.min_sentences + 1)));
  double density =
      jittered_density(config.machine_emotion_density, config.machine_density_jitter, rng);
  std::string text;
  for (int s = 0; s < n_sentences; ++s) {
    std::vector<std::string> tokens;
    std::string context = NgramModel::kStartContext;
    for (int step = 0; step < 30; ++step) {
      std::string token = model.sample_next(context, rng);
      if (token.empty()) break;
      context = token;
      tokens.push_back(std::move(token));
      if (ends_sentence(tokens.back())) break;
    }
    if (tokens.empty()) continue;
    if (!ends_sentence(tokens.back())) tokens.back().push_back('.');
    for (auto& token : tokens) {
      if (uniform_unit(rng) < density) {
        inject_emotion(token, emotion_words, rng);
      }
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!text.empty()) text.push_back(' ');
      text += tokens[i];
    }
  }
  return text;
}

}  // namespace

Dataset synth_corpus(const SynthConfig& config) {
  const MockData& data = MockData::builtin();
  const NgramModel model = NgramModel::train(data.corpus);

  std::vector<std::string> emotion_words;
  emotion_words.reserve(data.lexicon.size());
  for (const auto& [word, weight] : data.lexicon) emotion_words.push_back(word);

  const std::pair<Domain, std::string_view> domains[] = {
      {Domain::News, data::templates_news()},
      {Domain::Code, data::templates_code()},
      {Domain::Review, data::templates_review()},
  };

  Dataset dataset;
  dataset.name = "synthetic";
  int half = config.per_domain / 2;
  for (const auto& [domain, templates] : domains) {
    auto pool = sentence_pool(templates);
    for (int i = 0; i < half; ++i) {
      TextSample sample;
      sample.id = to_string(domain) + "-h-" + std::to_string(i);
      sample.domain = domain;
      sample.label = Label::Human;
      std::mt19937_64 rng(config.seed ^ fnv1a64(sample.id));
      sample.text = human_text(pool, emotion_words, config, rng);
      dataset.samples.push_back(std::move(sample));
    }
    for (int i = 0; i < config.per_domain - half; ++i) {
      TextSample sample;
      sample.id = to_string(domain) + "-m-" + std::to_string(i);
      sample.domain = domain;
      sample.label = Label::Machine;
      std::mt19937_64 rng(config.seed ^ fnv1a64(sample.id));
      sample.text = machine_text(model, emotion_words, config, rng);
      dataset.samples.push_back(std::move(sample));
    }
  }
  return dataset;
}

}  // namespace sad
