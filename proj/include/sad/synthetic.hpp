#pragma once

#include <cstdint>

#include "sad/core.hpp"

namespace sad {

// Deterministic synthetic corpus for offline evaluation. Human-labeled texts
// are built from the bundled sentence templates with a high emotion-word
// density and light word-order noise; machine-labeled texts are sampled from
// the mock n-gram model with a low emotion-word density. That induces both
// an intensity gap (the sentiment-differential signal) and a likelihood gap
// (the zero-shot baseline signal), with the intensity gap dominant.
struct SynthConfig {
  int per_domain = 200;  // per domain, half human / half machine
  std::uint64_t seed = 1;
  int min_sentences = 10;
  int max_sentences = 18;
  // Emotion-word densities are per-text: humans vary widely around the base
  // density, machine output stays uniformly flat. The width gap carries the
  // "more consistency" half of the intensity signal.
  double human_emotion_density = 0.15;
  double human_density_jitter = 0.09;
  double machine_emotion_density = 0.03;
  double machine_density_jitter = 0.02;
  int human_word_order_swaps = 3;  // per sentence
};

Dataset synth_corpus(const SynthConfig& config = {});

}  // namespace sad
