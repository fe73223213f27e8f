#include "sad/config.hpp"

#include <cstdlib>
#include <fstream>

#include "json.hpp"
#include "sad/cache.hpp"
#include "sad/errors.hpp"
#include "sad/mock_provider.hpp"
#include "sad/remote_provider.hpp"
#include "sad/util.hpp"

namespace sad {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: invalid integer for " + key + ": " + value);
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: invalid number for " + key + ": " + value);
  }
}

void apply_entry(AppConfig& config, const std::string& key, const std::string& value) {
  if (key == "provider") {
    if (value == "mock") config.provider = ProviderKind::Mock;
    else if (value == "remote") config.provider = ProviderKind::Remote;
    else throw ConfigError("config: provider must be mock or remote, got " + value);
  } else if (key == "model") {
    config.model_id = value;
  } else if (key == "api_base") {
    config.api_base = value;
  } else if (key == "api_key") {
    config.api_key = value;
  } else if (key == "cache_dir") {
    config.cache_dir = value;
  } else if (key == "parallelism") {
    long v = parse_long(key, value);
    if (v < 1) throw ConfigError("config: parallelism must be positive");
    config.parallelism = static_cast<int>(v);
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_long(key, value));
  } else if (key == "alpha") {
    double v = parse_double(key, value);
    if (v < 0.0 || v > 1.0) throw ConfigError("config: alpha must lie in [0, 1]");
    config.sad.alpha = v;
  } else if (key == "threshold") {
    config.sad.threshold = parse_double(key, value);
  } else if (key == "curvature_perturbations") {
    long v = parse_long(key, value);
    if (v < 2) throw ConfigError("config: curvature_perturbations must be >= 2");
    config.curvature.n_perturbations = static_cast<int>(v);
  } else if (key == "curvature_fraction") {
    double v = parse_double(key, value);
    if (v <= 0.0 || v > 1.0) throw ConfigError("config: curvature_fraction must lie in (0, 1]");
    config.curvature.perturb_fraction = v;
  } else if (key == "external_endpoint") {
    config.external_endpoint = value;
  } else if (key == "external_timeout_ms") {
    config.external_timeout = std::chrono::milliseconds(parse_long(key, value));
  } else if (key == "remote_backoff_ms") {
    config.remote_backoff = std::chrono::milliseconds(parse_long(key, value));
  } else {
    throw ConfigError("config: unknown key " + key);
  }
}

}  // namespace

AppConfig load_config(const std::optional<std::filesystem::path>& file) {
  AppConfig config;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot open config file: " + file->string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string entry = trim(line);
      if (entry.empty() || entry[0] == '#') continue;
      auto eq = entry.find('=');
      if (eq == std::string::npos) {
        throw ConfigError(file->string() + ":" + std::to_string(line_no) +
                          ": expected key=value");
      }
      apply_entry(config, trim(entry.substr(0, eq)), trim(entry.substr(eq + 1)));
    }
  }
  // Env wins over the file.
  if (const char* v = std::getenv("SAD_API_BASE")) config.api_base = v;
  if (const char* v = std::getenv("SAD_API_KEY")) config.api_key = v;
  if (const char* v = std::getenv("SAD_MODEL")) config.model_id = v;
  if (const char* v = std::getenv("SAD_CACHE_DIR")) config.cache_dir = v;

  config.curvature.seed = config.seed;
  return config;
}

void validate_config(const AppConfig& config) {
  if (config.provider == ProviderKind::Remote) {
    if (config.api_base.empty()) {
      throw ConfigError("remote provider requires api_base (or SAD_API_BASE)");
    }
    if (config.api_key.empty()) {
      throw ConfigError("remote provider requires api_key (or SAD_API_KEY)");
    }
  }
  if (config.parallelism < 1) throw ConfigError("parallelism must be positive");
  if (config.sad.alpha < 0.0 || config.sad.alpha > 1.0) {
    throw ConfigError("alpha must lie in [0, 1]");
  }
}

std::shared_ptr<Provider> make_provider(const AppConfig& config) {
  validate_config(config);
  std::shared_ptr<Provider> provider;
  if (config.provider == ProviderKind::Mock) {
    provider = std::make_shared<MockProvider>();
  } else {
    RemoteOptions options;
    if (!config.model_id.empty()) options.model = config.model_id;
    options.initial_backoff = config.remote_backoff;
    provider = std::make_shared<RemoteProvider>(
        make_http_transport(config.api_base, config.api_key), std::move(options));
  }
  if (!config.cache_dir.empty()) {
    auto cache = std::make_shared<ResponseCache>(config.cache_dir / "responses.cache");
    provider = std::make_shared<CachingProvider>(std::move(provider), std::move(cache));
  }
  return provider;
}

ScorerOptions scorer_options(const AppConfig& config) {
  ScorerOptions options;
  options.sad = config.sad;
  options.curvature = config.curvature;
  options.external_endpoint = config.external_endpoint;
  options.external_timeout = config.external_timeout;
  return options;
}

std::string config_digest(const AppConfig& config, const std::string& detector) {
  nlohmann::json j{{"detector", detector},
                   {"provider", config.provider == ProviderKind::Mock ? "mock" : "remote"},
                   {"model", config.model_id},
                   {"seed", config.seed},
                   {"alpha", config.sad.alpha},
                   {"threshold", config.sad.threshold ? nlohmann::json(*config.sad.threshold)
                                                      : nlohmann::json(nullptr)},
                   {"curvature_perturbations", config.curvature.n_perturbations},
                   {"curvature_fraction", config.curvature.perturb_fraction}};
  return sha256_hex(j.dump());
}

}  // namespace sad
