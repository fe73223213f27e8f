// Independent brute-force reference implementations. These deliberately do
// not share code with the library: full enumeration instead of closed forms,
// pair counting instead of rank sums, exhaustive search instead of sweeps.
#pragma once

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sad/core.hpp"

namespace oracles {

// O(n^2) pair counting: [#(s_m > s_h) + 0.5 #ties] / (n_m n_h).
inline double brute_auroc(const std::vector<double>& scores,
                          const std::vector<sad::Label>& labels) {
  double wins = 0.0, ties = 0.0;
  std::size_t n_machine = 0, n_human = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != sad::Label::Machine) continue;
    ++n_machine;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != sad::Label::Human) continue;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) ties += 1.0;
    }
  }
  for (sad::Label l : labels) {
    if (l == sad::Label::Human) ++n_human;
  }
  return (wins + 0.5 * ties) / (static_cast<double>(n_machine) * static_cast<double>(n_human));
}

// Exhaustive threshold search over the same candidate set the library uses
// (sentinels plus midpoints), evaluating J naively per candidate.
inline double brute_best_threshold(const std::vector<double>& scores,
                                   const std::vector<sad::Label>& labels) {
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> candidates;
  candidates.push_back(sorted.front() - 1.0);
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i] != sorted[i + 1]) {
      candidates.push_back(sorted[i] + (sorted[i + 1] - sorted[i]) / 2.0);
    }
  }
  candidates.push_back(sorted.back() + 1.0);

  double best_t = candidates.front(), best_j = -2.0;
  for (double t : candidates) {
    double tp = 0, fn = 0, fp = 0, tn = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      bool predicted_machine = scores[i] > t;
      if (labels[i] == sad::Label::Machine) {
        (predicted_machine ? tp : fn) += 1;
      } else {
        (predicted_machine ? fp : tn) += 1;
      }
    }
    double j = tp / (tp + fn) - fp / (fp + tn);
    if (j > best_j) {
      best_j = j;
      best_t = t;
    }
  }
  return best_t;
}

// Bigram statistics recomputed by full enumeration over the vocabulary.
struct BruteBigram {
  std::map<std::string, std::map<std::string, int>> counts;
  std::map<std::string, int> totals;
  std::set<std::string> vocab;

  explicit BruteBigram(const std::string& corpus) {
    std::istringstream lines(corpus);
    std::string line;
    while (std::getline(lines, line)) {
      auto tokens = sad::tokenize_ws(line);
      if (tokens.empty()) continue;
      std::string context = "<s>";
      for (auto& t : tokens) {
        for (char& c : t) {
          if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        }
        vocab.insert(t);
        counts[context][t] += 1;
        totals[context] += 1;
        context = t;
      }
    }
    vocab.insert("<unk>");
  }

  struct Score {
    double logprob;
    std::uint64_t rank;
    double entropy;
  };

  double prob(const std::string& context, const std::string& word) const {
    double v = static_cast<double>(vocab.size());
    auto ti = totals.find(context);
    double n = ti == totals.end() ? 0.0 : static_cast<double>(ti->second);
    double c = 0.0;
    if (auto ci = counts.find(context); ci != counts.end()) {
      if (auto wi = ci->second.find(word); wi != ci->second.end()) {
        c = static_cast<double>(wi->second);
      }
    }
    return (c + 1.0) / (n + v);
  }

  Score score(const std::string& context, const std::string& token) const {
    std::string mapped = vocab.count(token) ? token : "<unk>";
    double p_token = prob(context, mapped);
    std::uint64_t rank = 1;
    double entropy = 0.0;
    for (const auto& w : vocab) {
      double p = prob(context, w);
      entropy -= p * std::log(p);
      if (p > p_token) ++rank;
    }
    return {std::log(p_token), rank, entropy};
  }

  std::vector<Score> score_text(const std::string& text) const {
    std::vector<Score> out;
    std::string context = "<s>";
    for (auto& raw : sad::tokenize_ws(text)) {
      std::string t = raw;
      for (char& c : t) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      }
      out.push_back(score(context, t));
      context = t;
    }
    return out;
  }
};

}  // namespace oracles
