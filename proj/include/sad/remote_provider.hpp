#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <string>

#include "json.hpp"
#include "sad/provider.hpp"

namespace sad {

// Minimal JSON-over-HTTP seam so tests can stub the wire.
class ApiTransport {
 public:
  virtual ~ApiTransport() = default;

  // POSTs body to path (relative to the configured base URL) and returns the
  // parsed JSON response. Throws ProviderUnavailable on transport failure or
  // non-2xx status, MalformedResponse on non-JSON payloads.
  virtual nlohmann::json post_json(const std::string& path, const nlohmann::json& body) = 0;
};

// HTTPS/HTTP transport against an OpenAI-compatible server. base_url carries
// any path prefix, e.g. "https://api.openai.com/v1".
std::unique_ptr<ApiTransport> make_http_transport(
    std::string base_url, std::string api_key,
    std::chrono::milliseconds timeout = std::chrono::milliseconds{30000});

struct RemoteOptions {
  std::string model = "gpt-3.5-turbo";
  int max_attempts = 3;  // per operation, covering transport failures and
                         // unparseable sentiment replies
  std::chrono::milliseconds initial_backoff{1000};  // doubles per retry
  int top_logprobs = 5;
  // Injectable for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep_fn;
};

// OpenAI-compatible provider. The three prompt operations go through
// /chat/completions with the fixed templates below; token scoring uses the
// /completions echo+logprobs form, flagging ranks and entropies that are
// only known up to the returned top-k alternatives.
class RemoteProvider : public Provider {
 public:
  RemoteProvider(std::shared_ptr<ApiTransport> transport, RemoteOptions options = {});

  std::string provider_id() const override { return "openai-compat"; }
  std::string model_id() const override { return options_.model; }
  std::string prompt_version() const override { return "rw-1+sent-1+para-1"; }

  std::string rewrite_objective(const std::string& text) override;
  SentimentIntensity sentiment_intensity(const std::string& text,
                                         IntensitySource source) override;
  std::string paraphrase_sentences(const std::string& text, double fraction,
                                   std::uint64_t seed) override;
  std::vector<TokenScore> token_scores(const std::string& text) override;

  static const char* kRewriteSystemPrompt;
  static const char* kSentimentSystemPrompt;
  static const char* kParaphraseSystemPrompt;

 private:
  std::string chat_once(const std::string& system_prompt, const std::string& user_content);
  std::string chat_with_retries(const std::string& system_prompt, const std::string& user_content);
  void backoff(int attempt);

  std::shared_ptr<ApiTransport> transport_;
  RemoteOptions options_;
};

}  // namespace sad
