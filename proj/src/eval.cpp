#include "sad/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "sad/errors.hpp"
#include "sad/util.hpp"

namespace sad {

using nlohmann::json;

double auroc(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) throw Error("auroc: scores and labels differ in length");
  std::size_t n_machine = 0, n_human = 0;
  for (Label l : labels) {
    if (l == Label::Machine) ++n_machine;
    else if (l == Label::Human) ++n_human;
    else throw Error("auroc: labels must be Human or Machine");
  }
  if (n_machine == 0 || n_human == 0) throw DegenerateLabels("auroc requires both classes");

  // Mann-Whitney with midranks; exactly the pair count
  // [#(s_m > s_h) + 0.5 #ties] / (n_m n_h) since midranks are half-integers.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double machine_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    double midrank = static_cast<double>(i + j + 2) / 2.0;  // 1-based
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]] == Label::Machine) machine_rank_sum += midrank;
    }
    i = j + 1;
  }
  double nm = static_cast<double>(n_machine);
  double u = machine_rank_sum - nm * (nm + 1.0) / 2.0;
  return u / (nm * static_cast<double>(n_human));
}

EvalReport evaluate(const Dataset& dataset, const Scorer& scorer, const EvalMeta& meta,
                    const EvalOptions& options) {
  std::vector<std::size_t> used;
  used.reserve(dataset.samples.size());
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
    if (dataset.samples[i].label != Label::Unknown) used.push_back(i);
  }

  std::vector<double> scores(used.size());
  std::vector<std::string> failed(used.size());
  parallel_for(used.size(), options.parallelism, [&](std::size_t k) {
    const TextSample& sample = dataset.samples[used[k]];
    try {
      scores[k] = scorer(sample.text).ai_score;
    } catch (const std::exception& e) {
      failed[k] = sample.id;
      (void)e;
    }
  });

  std::vector<std::string> failed_ids;
  for (auto& id : failed) {
    if (!id.empty()) failed_ids.push_back(std::move(id));
  }
  if (!failed_ids.empty()) {
    std::sort(failed_ids.begin(), failed_ids.end());
    throw EvalPartialFailure(std::move(failed_ids));
  }

  std::map<Domain, std::vector<double>> domain_scores;
  std::map<Domain, std::vector<Label>> domain_labels;
  for (std::size_t k = 0; k < used.size(); ++k) {
    const TextSample& sample = dataset.samples[used[k]];
    domain_scores[sample.domain].push_back(scores[k]);
    domain_labels[sample.domain].push_back(sample.label);
  }

  EvalReport report;
  report.detector_id = meta.detector_id;
  report.model_id = meta.model_id;
  report.config_digest = meta.config_digest;
  double total = 0.0;
  for (const auto& [domain, ds] : domain_scores) {
    double score;
    try {
      score = 100.0 * auroc(ds, domain_labels[domain]);
    } catch (const DegenerateLabels&) {
      throw DegenerateLabels("domain \"" + to_string(domain) +
                             "\" lacks one of the two classes");
    }
    report.per_domain[domain] = score;
    report.n_samples[domain] = static_cast<int>(ds.size());
    total += score;
  }
  if (report.per_domain.empty()) throw DegenerateLabels("dataset has no labeled samples");
  report.average = total / static_cast<double>(report.per_domain.size());
  return report;
}

std::vector<SweepPoint> length_sweep(const Dataset& dataset, const Scorer& scorer,
                                     const EvalMeta& meta, std::span<const int> lengths,
                                     const EvalOptions& options) {
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 20 || lengths[i] > 200) {
      throw ConfigError("sweep lengths must lie in [20, 200]");
    }
    if (i > 0 && lengths[i] <= lengths[i - 1]) {
      throw ConfigError("sweep lengths must be strictly ascending");
    }
  }

  std::vector<SweepPoint> points;
  points.reserve(lengths.size());
  for (int length : lengths) {
    Dataset truncated;
    truncated.name = dataset.name;
    for (const auto& sample : dataset.samples) {
      auto token_count = tokenize_ws(sample.text).size();
      if (static_cast<double>(token_count) < static_cast<double>(length) / 2.0) continue;
      TextSample copy = sample;
      copy.text = truncate_tokens(sample.text, static_cast<std::size_t>(length));
      truncated.samples.push_back(std::move(copy));
    }
    EvalReport report = evaluate(truncated, scorer, meta, options);
    int n = 0;
    for (const auto& [domain, count] : report.n_samples) n += count;
    points.push_back({length, report.average, n});
  }
  return points;
}

Dataset apply_paraphrase_attack(const Dataset& dataset, double fraction, Provider& provider,
                                std::uint64_t seed) {
  if (fraction == 0.0) return dataset;
  Dataset attacked = dataset;
  for (auto& sample : attacked.samples) {
    if (sample.label != Label::Machine) continue;
    sample.text = provider.paraphrase_sentences(sample.text, fraction, seed ^ fnv1a64(sample.id));
  }
  return attacked;
}

namespace {

std::string two_decimals(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("short write: " + path.string());
}

json attack_to_json(const AttackReport& attack) {
  return json{{"fraction", attack.fraction},
              {"seed", attack.seed},
              {"before", report_to_json(attack.before)},
              {"after", report_to_json(attack.after)},
              {"delta_average", attack.delta_average}};
}

}  // namespace

json report_to_json(const EvalReport& report) {
  json per_domain = json::object();
  json n_samples = json::object();
  for (const auto& [domain, score] : report.per_domain) per_domain[to_string(domain)] = score;
  for (const auto& [domain, n] : report.n_samples) n_samples[to_string(domain)] = n;
  return json{{"detector_id", report.detector_id},
              {"model_id", report.model_id},
              {"config_digest", report.config_digest},
              {"metric", report.metric},
              {"per_domain", per_domain},
              {"average", report.average},
              {"n_samples", n_samples}};
}

EvalReport report_from_json(const json& j) {
  EvalReport report;
  report.detector_id = j.at("detector_id").get<std::string>();
  report.model_id = j.at("model_id").get<std::string>();
  report.config_digest = j.at("config_digest").get<std::string>();
  report.metric = j.at("metric").get<std::string>();
  for (const auto& [key, value] : j.at("per_domain").items()) {
    auto domain = domain_from_string(key);
    if (!domain) throw Error("report: unknown domain " + key);
    report.per_domain[*domain] = value.get<double>();
  }
  for (const auto& [key, value] : j.at("n_samples").items()) {
    auto domain = domain_from_string(key);
    if (!domain) throw Error("report: unknown domain " + key);
    report.n_samples[*domain] = value.get<int>();
  }
  report.average = j.at("average").get<double>();
  return report;
}

void write_report(const EvalReport& report, const std::filesystem::path& base) {
  write_text_file(base.string() + ".json", report_to_json(report).dump(2) + "\n");
  std::string csv = "domain,score,n\n";
  for (const auto& [domain, score] : report.per_domain) {
    csv += to_string(domain) + "," + two_decimals(score) + "," +
           std::to_string(report.n_samples.at(domain)) + "\n";
  }
  write_text_file(base.string() + ".csv", csv);
}

void write_report(std::span<const SweepPoint> sweep, const std::filesystem::path& base) {
  json arr = json::array();
  for (const auto& point : sweep) {
    arr.push_back(json{{"length", point.length},
                       {"detection_score", point.detection_score},
                       {"n", point.n}});
  }
  write_text_file(base.string() + ".json", arr.dump(2) + "\n");
  std::string csv = "length,score,n\n";
  for (const auto& point : sweep) {
    csv += std::to_string(point.length) + "," + two_decimals(point.detection_score) + "," +
           std::to_string(point.n) + "\n";
  }
  write_text_file(base.string() + ".csv", csv);
}

void write_report(const AttackReport& attack, const std::filesystem::path& base) {
  write_text_file(base.string() + ".json", attack_to_json(attack).dump(2) + "\n");
  std::string csv = "domain,score_before,score_after,delta\n";
  for (const auto& [domain, before] : attack.before.per_domain) {
    auto it = attack.after.per_domain.find(domain);
    double after = it == attack.after.per_domain.end() ? 0.0 : it->second;
    csv += to_string(domain) + "," + two_decimals(before) + "," + two_decimals(after) + "," +
           two_decimals(before - after) + "\n";
  }
  write_text_file(base.string() + ".csv", csv);
}

}  // namespace sad
