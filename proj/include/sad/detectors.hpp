#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "sad/core.hpp"
#include "sad/provider.hpp"

namespace sad {

struct SadConfig {
  // Blend weight between the intensity differential and raw neutrality:
  //   ai_score = (1 - alpha) * (-delta) + alpha * (1 - intensity_original)
  // alpha 0 scores by the differential alone.
  double alpha = 0.0;
  std::optional<double> threshold;  // binary decision cut, when calibrated
};

struct CurvatureConfig {
  int n_perturbations = 10;       // >= 2
  double perturb_fraction = 0.15; // sentence fraction per perturbation
  std::uint64_t seed = 1;
};

// The sentiment-differential detector. Rewrites the text into an objective
// register, scores emotional intensity before and after, and maps the drop
// to an AI-likelihood score: machine text, already neutral and consistent,
// loses little intensity under the rewrite and so scores high.
DetectionResult sad_detect(const std::string& text, Provider& provider,
                           const SadConfig& config = {});

// Threshold maximizing Youden's J = TPR - FPR (Machine positive), evaluated
// at midpoints between adjacent distinct scores plus sentinels below the
// minimum and above the maximum; ties resolve to the smallest candidate.
double calibrate_threshold(std::span<const double> scores, std::span<const Label> labels);

// Machine iff score > threshold (strict).
Label verdict(double score, double threshold);

// Zero-shot baselines over the provider's token statistics.
DetectionResult logrank_detect(const std::string& text, Provider& provider);
DetectionResult entropy_detect(const std::string& text, Provider& provider);
DetectionResult meanlogprob_detect(const std::string& text, Provider& provider);
DetectionResult curvature_detect(const std::string& text, Provider& provider,
                                 const CurvatureConfig& config = {});

// Adapter for external detection services:
// POST {"text": ...} -> 200 {"ai_score": number}.
DetectionResult external_detect(const std::string& text, const std::string& endpoint,
                                std::chrono::milliseconds timeout = std::chrono::milliseconds{10000});

// Scoring closure shared by the eval harness, the CLI and the service.
using Scorer = std::function<DetectionResult(const std::string&)>;

struct ScorerOptions {
  SadConfig sad;
  CurvatureConfig curvature;
  std::string external_endpoint;
  std::chrono::milliseconds external_timeout{10000};
};

const std::vector<std::string>& detector_names();
bool is_detector_name(const std::string& name);

// Throws ConfigError for unknown names or a missing external endpoint.
// The provider reference must outlive the returned scorer.
Scorer make_scorer(const std::string& name, Provider& provider, const ScorerOptions& options = {});

}  // namespace sad
