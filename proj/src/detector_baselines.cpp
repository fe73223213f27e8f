#include <algorithm>
#include <cmath>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "sad/detectors.hpp"
#include "sad/errors.hpp"

namespace sad {

namespace {

double mean_logprob(const std::vector<TokenScore>& scores) {
  double sum = 0.0;
  for (const auto& s : scores) sum += s.logprob;
  return sum / static_cast<double>(scores.size());
}

std::vector<TokenScore> require_scores(const std::string& text, Provider& provider) {
  auto scores = provider.token_scores(text);
  if (scores.empty()) throw EmptyTokenization();
  return scores;
}

}  // namespace

DetectionResult logrank_detect(const std::string& text, Provider& provider) {
  auto scores = require_scores(text, provider);
  double sum = 0.0;
  for (const auto& s : scores) sum += std::log(static_cast<double>(s.rank));
  double mean_log_rank = sum / static_cast<double>(scores.size());
  // Machine text sits on low-rank tokens, so invert for the shared
  // orientation (higher = more machine-like).
  return {"logrank", -mean_log_rank, {{"mean_log_rank", mean_log_rank}}, std::nullopt};
}

DetectionResult entropy_detect(const std::string& text, Provider& provider) {
  auto scores = require_scores(text, provider);
  double sum = 0.0;
  for (const auto& s : scores) sum += s.entropy;
  double mean_entropy = sum / static_cast<double>(scores.size());
  return {"entropy", -mean_entropy, {{"mean_entropy", mean_entropy}}, std::nullopt};
}

DetectionResult meanlogprob_detect(const std::string& text, Provider& provider) {
  auto scores = require_scores(text, provider);
  double mean = mean_logprob(scores);
  return {"meanlogprob", mean, {{"mean_logprob", mean}}, std::nullopt};
}

DetectionResult curvature_detect(const std::string& text, Provider& provider,
                                 const CurvatureConfig& config) {
  if (config.n_perturbations < 2) {
    throw ConfigError("curvature needs at least 2 perturbations");
  }
  double l0 = mean_logprob(require_scores(text, provider));

  std::vector<double> perturbed;
  perturbed.reserve(static_cast<std::size_t>(config.n_perturbations));
  bool any_changed = false;
  for (int k = 1; k <= config.n_perturbations; ++k) {
    std::string variant = provider.paraphrase_sentences(text, config.perturb_fraction,
                                                        config.seed + static_cast<std::uint64_t>(k));
    if (variant != text) any_changed = true;
    perturbed.push_back(mean_logprob(require_scores(variant, provider)));
  }
  if (!any_changed) throw DegeneratePerturbations();

  double mean = 0.0;
  for (double l : perturbed) mean += l;
  mean /= static_cast<double>(perturbed.size());
  double var = 0.0;
  for (double l : perturbed) var += (l - mean) * (l - mean);
  var /= static_cast<double>(perturbed.size());
  double stddev = std::sqrt(var);

  constexpr double kEpsilon = 1e-6;
  double score = (l0 - mean) / std::max(stddev, kEpsilon);
  return {"curvature",
          score,
          {{"l0", l0}, {"mean_perturbed", mean}, {"std_perturbed", stddev}},
          std::nullopt};
}

namespace {

struct ParsedEndpoint {
  std::string origin;  // scheme://host[:port]
  std::string host;
  std::string path;
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
  auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint must include a scheme: " + endpoint);
  }
  auto authority_start = scheme_end + 3;
  auto path_start = endpoint.find('/', authority_start);
  ParsedEndpoint out;
  if (path_start == std::string::npos) {
    out.origin = endpoint;
    out.path = "/";
  } else {
    out.origin = endpoint.substr(0, path_start);
    out.path = endpoint.substr(path_start);
  }
  std::string authority = out.origin.substr(authority_start);
  auto colon = authority.rfind(':');
  out.host = colon == std::string::npos ? authority : authority.substr(0, colon);
  return out;
}

}  // namespace

DetectionResult external_detect(const std::string& text, const std::string& endpoint,
                                std::chrono::milliseconds timeout) {
  auto parsed = parse_endpoint(endpoint);
  httplib::Client client(parsed.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);

  nlohmann::json body{{"text", text}};
  auto res = client.Post(parsed.path, body.dump(), "application/json");
  if (!res) {
    throw ProviderUnavailable("external detector unreachable: " +
                              httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProviderUnavailable("external detector returned status " +
                              std::to_string(res->status));
  }

  nlohmann::json payload;
  try {
    payload = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception&) {
    throw MalformedResponse("external detector returned non-JSON body");
  }
  if (!payload.is_object() || !payload.contains("ai_score") ||
      !payload["ai_score"].is_number()) {
    throw MalformedResponse("external detector response missing numeric ai_score");
  }
  double score = payload["ai_score"].get<double>();
  return {parsed.host, score, {{"ai_score", score}}, std::nullopt};
}

const std::vector<std::string>& detector_names() {
  static const std::vector<std::string> names{"sad",         "logrank",   "entropy",
                                              "meanlogprob", "curvature", "external"};
  return names;
}

bool is_detector_name(const std::string& name) {
  const auto& names = detector_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Scorer make_scorer(const std::string& name, Provider& provider, const ScorerOptions& options) {
  if (name == "sad") {
    return [&provider, cfg = options.sad](const std::string& text) {
      return sad_detect(text, provider, cfg);
    };
  }
  if (name == "logrank") {
    return [&provider](const std::string& text) { return logrank_detect(text, provider); };
  }
  if (name == "entropy") {
    return [&provider](const std::string& text) { return entropy_detect(text, provider); };
  }
  if (name == "meanlogprob") {
    return [&provider](const std::string& text) { return meanlogprob_detect(text, provider); };
  }
  if (name == "curvature") {
    return [&provider, cfg = options.curvature](const std::string& text) {
      return curvature_detect(text, provider, cfg);
    };
  }
  if (name == "external") {
    if (options.external_endpoint.empty()) {
      throw ConfigError("external detector requires an endpoint");
    }
    return [endpoint = options.external_endpoint,
            timeout = options.external_timeout](const std::string& text) {
      return external_detect(text, endpoint, timeout);
    };
  }
  throw ConfigError("unknown detector: " + name);
}

}  // namespace sad
