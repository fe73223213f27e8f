#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sad/core.hpp"
#include "sad/detectors.hpp"

namespace sad {

// Detection scores are AUROC x 100; the metric field records that
// reconstruction in every report.
struct EvalReport {
  std::string detector_id;
  std::string model_id;
  std::string config_digest;
  std::string metric = "auroc_x100";
  std::map<Domain, double> per_domain;  // each in [0, 100]
  double average = 0.0;                 // unweighted mean of per_domain
  std::map<Domain, int> n_samples;

  bool operator==(const EvalReport&) const = default;
};

struct SweepPoint {
  int length = 0;              // input length in whitespace tokens
  double detection_score = 0;  // cross-domain average, in [0, 100]
  int n = 0;                   // samples retained at this length

  bool operator==(const SweepPoint&) const = default;
};

struct AttackReport {
  double fraction = 0.0;
  std::uint64_t seed = 0;
  EvalReport before;
  EvalReport after;
  double delta_average = 0.0;  // before.average - after.average

  bool operator==(const AttackReport&) const = default;
};

struct EvalMeta {
  std::string detector_id;
  std::string model_id;
  std::string config_digest;
};

struct EvalOptions {
  int parallelism = 4;
};

// AUROC with exact tie handling:
//   [#(machine, human) pairs with s_m > s_h + 0.5 * #ties] / (n_m * n_h)
// Throws DegenerateLabels unless both classes are present.
double auroc(std::span<const double> scores, std::span<const Label> labels);

// Scores every labeled sample, computes AUROC x 100 per domain and the
// unweighted cross-domain average. Unknown-labeled samples are skipped.
// Per-sample failures abort with EvalPartialFailure listing the failed ids.
// Output is identical regardless of parallelism.
EvalReport evaluate(const Dataset& dataset, const Scorer& scorer, const EvalMeta& meta,
                    const EvalOptions& options = {});

// For each length L: truncate every sample to L whitespace tokens, drop
// samples shorter than L/2 tokens, evaluate. Lengths must be ascending and
// within [20, 200].
std::vector<SweepPoint> length_sweep(const Dataset& dataset, const Scorer& scorer,
                                     const EvalMeta& meta, std::span<const int> lengths,
                                     const EvalOptions& options = {});

// Adversary model: paraphrases a fraction of sentences of every
// Machine-labeled sample (per-sample seed = seed ^ fnv1a64(id)); Human
// samples, labels, ids and dataset size are untouched.
Dataset apply_paraphrase_attack(const Dataset& dataset, double fraction, Provider& provider,
                                std::uint64_t seed);

nlohmann::json report_to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);

// Each writer emits <base>.json (full precision) and <base>.csv (scores
// with exactly two decimals).
void write_report(const EvalReport& report, const std::filesystem::path& base);
void write_report(std::span<const SweepPoint> sweep, const std::filesystem::path& base);
void write_report(const AttackReport& attack, const std::filesystem::path& base);

}  // namespace sad
