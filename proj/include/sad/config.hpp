#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "sad/detectors.hpp"
#include "sad/provider.hpp"

namespace sad {

enum class ProviderKind { Mock, Remote };

struct AppConfig {
  ProviderKind provider = ProviderKind::Mock;
  std::string model_id;  // defaults per provider kind when empty
  std::string api_base;
  std::string api_key;
  std::filesystem::path cache_dir;
  int parallelism = 4;
  std::uint64_t seed = 1;
  SadConfig sad;
  CurvatureConfig curvature{10, 0.15, 1};
  std::string external_endpoint;
  std::chrono::milliseconds external_timeout{10000};
  std::chrono::milliseconds remote_backoff{1000};
};

// Flat key=value config file ('#' comments allowed), then env-var overrides:
// SAD_API_BASE, SAD_API_KEY, SAD_MODEL, SAD_CACHE_DIR (env wins over file).
AppConfig load_config(const std::optional<std::filesystem::path>& file);

// Throws ConfigError when the config cannot back a provider (e.g. remote
// without api_base / api_key).
void validate_config(const AppConfig& config);

// Builds the configured provider, wrapped in the persistent cache when
// cache_dir is set.
std::shared_ptr<Provider> make_provider(const AppConfig& config);

ScorerOptions scorer_options(const AppConfig& config);

// Digest over everything that can change scores (provider, model, prompts,
// detector parameters, seed) and nothing that cannot (parallelism).
std::string config_digest(const AppConfig& config, const std::string& detector);

}  // namespace sad
