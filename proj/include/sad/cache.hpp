#pragma once

#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "sad/provider.hpp"

namespace sad {

// Append-only persistent response cache. One record per line:
//
//   key(64 hex) \t operation \t base64(value) \t RFC3339 timestamp
//
// Records survive process restart; later records win on duplicate keys.
// Corrupt lines are skipped with a note on stderr and do not poison the
// rest of the file.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path file);

  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, const std::string& operation, const std::string& value);

  std::size_t record_count() const;  // distinct keys currently loaded
  const std::filesystem::path& file() const { return file_; }

 private:
  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::map<std::string, std::string> entries_;
  std::ofstream out_;  // single append point; writes serialized by mu_
};

// Wraps any provider with the cache. The first call for a given key invokes
// the inner provider and appends a record; identical calls (including
// concurrent ones, which wait on the in-flight computation) return the
// stored value with zero extra inner invocations.
class CachingProvider : public Provider {
 public:
  CachingProvider(std::shared_ptr<Provider> inner, std::shared_ptr<ResponseCache> cache);

  std::string provider_id() const override { return inner_->provider_id(); }
  std::string model_id() const override { return inner_->model_id(); }
  std::string prompt_version() const override { return inner_->prompt_version(); }

  std::string rewrite_objective(const std::string& text) override;
  SentimentIntensity sentiment_intensity(const std::string& text,
                                         IntensitySource source) override;
  std::string paraphrase_sentences(const std::string& text, double fraction,
                                   std::uint64_t seed) override;
  std::vector<TokenScore> token_scores(const std::string& text) override;

  // Cache key: sha256 over (provider_id, model_id, prompt_version,
  // operation, canonical input).
  std::string cache_key(const std::string& operation, const std::string& canonical_input) const;

 private:
  std::string through(const std::string& operation, const std::string& canonical_input,
                      const std::function<std::string()>& compute);

  std::shared_ptr<Provider> inner_;
  std::shared_ptr<ResponseCache> cache_;
  std::mutex inflight_mu_;
  std::map<std::string, std::shared_future<std::string>> inflight_;
};

}  // namespace sad
