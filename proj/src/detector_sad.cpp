#include <algorithm>
#include <cmath>
#include <vector>

#include "sad/detectors.hpp"
#include "sad/errors.hpp"

namespace sad {

DetectionResult sad_detect(const std::string& text, Provider& provider, const SadConfig& config) {
  std::string rewritten = provider.rewrite_objective(text);
  if (rewritten.empty()) throw RewriteCollapsed();

  double intensity_original =
      provider.sentiment_intensity(text, IntensitySource::Original).value;
  double intensity_rewritten =
      provider.sentiment_intensity(rewritten, IntensitySource::Rewritten).value;
  double delta = intensity_original - intensity_rewritten;

  DetectionResult result;
  result.detector_id = "sad";
  result.ai_score =
      (1.0 - config.alpha) * (-delta) + config.alpha * (1.0 - intensity_original);
  result.components = {{"intensity_original", intensity_original},
                       {"intensity_rewritten", intensity_rewritten},
                       {"delta", delta}};
  if (config.threshold) result.verdict = verdict(result.ai_score, *config.threshold);
  return result;
}

double calibrate_threshold(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) {
    throw Error("calibrate_threshold: scores and labels differ in length");
  }
  std::size_t n_machine = 0, n_human = 0;
  for (Label l : labels) {
    if (l == Label::Machine) ++n_machine;
    else if (l == Label::Human) ++n_human;
    else throw Error("calibrate_threshold: labels must be Human or Machine");
  }
  if (n_machine == 0 || n_human == 0) {
    throw DegenerateLabels("calibrate_threshold requires both classes");
  }

  // Sorted (score, is_machine) pairs; prefix counts give TPR/FPR at any cut.
  std::vector<std::pair<double, bool>> points;
  points.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    points.emplace_back(scores[i], labels[i] == Label::Machine);
  }
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<double> candidates;
  candidates.push_back(points.front().first - 1.0);  // below-min sentinel
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i].first != points[i + 1].first) {
      candidates.push_back(points[i].first + (points[i + 1].first - points[i].first) / 2.0);
    }
  }
  candidates.push_back(points.back().first + 1.0);  // above-max sentinel

  double best_threshold = candidates.front();
  double best_j = -2.0;
  std::size_t at_or_below_machine = 0, at_or_below_human = 0, cursor = 0;
  for (double t : candidates) {
    while (cursor < points.size() && points[cursor].first <= t) {
      if (points[cursor].second) ++at_or_below_machine;
      else ++at_or_below_human;
      ++cursor;
    }
    double tpr =
        static_cast<double>(n_machine - at_or_below_machine) / static_cast<double>(n_machine);
    double fpr = static_cast<double>(n_human - at_or_below_human) / static_cast<double>(n_human);
    double j = tpr - fpr;
    if (j > best_j) {  // strict: ties keep the smallest qualifying threshold
      best_j = j;
      best_threshold = t;
    }
  }
  return best_threshold;
}

Label verdict(double score, double threshold) {
  return score > threshold ? Label::Machine : Label::Human;
}

}  // namespace sad
