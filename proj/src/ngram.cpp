#include "sad/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "sad/core.hpp"
#include "sad/util.hpp"

namespace sad {

const std::string NgramModel::kStartContext = "<s>";
const std::string NgramModel::kUnknown = "<unk>";

NgramModel NgramModel::train(const std::string& corpus) {
  NgramModel model;
  std::set<std::string> vocab;
  std::istringstream lines(corpus);
  std::string line;
  while (std::getline(lines, line)) {
    auto tokens = tokenize_ws(line);
    if (tokens.empty()) continue;
    std::string context = kStartContext;
    for (auto& raw : tokens) {
      std::string token = ascii_lower(std::move(raw));
      vocab.insert(token);
      ++model.counts_[context][token];
      ++model.context_totals_[context];
      context = std::move(token);
    }
  }
  vocab.insert(kUnknown);
  model.vocab_.assign(vocab.begin(), vocab.end());
  return model;
}

bool NgramModel::in_vocab(const std::string& token) const {
  return std::binary_search(vocab_.begin(), vocab_.end(), token);
}

NgramModel::PositionScore NgramModel::score(const std::string& context,
                                            const std::string& token) const {
  const double v = static_cast<double>(vocab_.size());
  auto ctx_it = counts_.find(context);
  if (ctx_it == counts_.end()) {
    // Unseen context: the smoothed distribution is uniform over the
    // vocabulary, every token ties for first place.
    return {std::log(1.0 / v), 1, std::log(v)};
  }

  const auto& successors = ctx_it->second;
  const double n = static_cast<double>(context_totals_.at(context));
  const std::string& mapped = in_vocab(token) ? token : kUnknown;

  std::uint32_t count = 0;
  if (auto it = successors.find(mapped); it != successors.end()) count = it->second;

  std::uint64_t rank = 1;
  double entropy = 0.0;
  for (const auto& [w, c] : successors) {
    if (c > count) ++rank;
    double p = (c + 1.0) / (n + v);
    entropy -= p * std::log(p);
  }
  double p_unseen = 1.0 / (n + v);
  double unseen = v - static_cast<double>(successors.size());
  entropy -= unseen * p_unseen * std::log(p_unseen);

  double logprob = std::log((count + 1.0) / (n + v));
  return {logprob, rank, entropy};
}

std::string NgramModel::sample_next(const std::string& context, std::mt19937_64& rng) const {
  auto ctx_it = counts_.find(context);
  if (ctx_it == counts_.end()) return {};
  std::uint64_t total = context_totals_.at(context);
  std::uint64_t r = rng() % total;
  for (const auto& [w, c] : ctx_it->second) {
    if (r < c) return w;
    r -= c;
  }
  return ctx_it->second.rbegin()->first;  // unreachable
}

}  // namespace sad
