#include "sad/remote_provider.hpp"

#include <cctype>
#include <cmath>
#include <thread>

#include "httplib.h"
#include "sad/errors.hpp"
#include "sad/util.hpp"

namespace sad {

using nlohmann::json;

const char* RemoteProvider::kRewriteSystemPrompt =
    "You rewrite text to be objective and emotionally neutral while preserving all factual "
    "content. Output only the rewritten text.";
const char* RemoteProvider::kSentimentSystemPrompt =
    "Rate the emotional intensity of the following text on an integer scale from 0 (completely "
    "neutral) to 100 (extremely emotional). Output only the integer.";
const char* RemoteProvider::kParaphraseSystemPrompt =
    "Paraphrase the following sentence, preserving its meaning. Output only the paraphrase.";

namespace {

// base_url -> (origin for the client, path prefix for requests)
std::pair<std::string, std::string> split_base_url(const std::string& base_url) {
  auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("api base must include a scheme: " + base_url);
  }
  auto path_start = base_url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {base_url, ""};
  std::string prefix = base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {base_url.substr(0, path_start), prefix};
}

class HttpTransport : public ApiTransport {
 public:
  HttpTransport(std::string base_url, std::string api_key, std::chrono::milliseconds timeout)
      : api_key_(std::move(api_key)), timeout_(timeout) {
    std::tie(origin_, prefix_) = split_base_url(base_url);
  }

  json post_json(const std::string& path, const json& body) override {
    // One client per request: httplib clients are not safe to share across
    // threads, and providers must be.
    httplib::Client client(origin_);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout_));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout_));
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    auto res = client.Post(prefix_ + path, headers, body.dump(), "application/json");
    if (!res) {
      throw ProviderUnavailable("transport error: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      throw ProviderUnavailable("http status " + std::to_string(res->status));
    }
    try {
      return json::parse(res->body);
    } catch (const json::exception& e) {
      throw MalformedResponse(std::string("non-JSON payload: ") + e.what());
    }
  }

 private:
  std::string origin_, prefix_, api_key_;
  std::chrono::milliseconds timeout_;
};

std::optional<int> parse_integer_0_100(const std::string& reply) {
  std::string trimmed;
  for (char c : reply) {
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
  }
  if (trimmed.empty() || trimmed.size() > 3) return std::nullopt;
  int value = 0;
  for (char c : trimmed) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  if (value > 100) return std::nullopt;
  return value;
}

}  // namespace

std::unique_ptr<ApiTransport> make_http_transport(std::string base_url, std::string api_key,
                                                  std::chrono::milliseconds timeout) {
  return std::make_unique<HttpTransport>(std::move(base_url), std::move(api_key), timeout);
}

RemoteProvider::RemoteProvider(std::shared_ptr<ApiTransport> transport, RemoteOptions options)
    : transport_(std::move(transport)), options_(std::move(options)) {
  if (!options_.sleep_fn) {
    options_.sleep_fn = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

void RemoteProvider::backoff(int attempt) {
  auto delay = options_.initial_backoff * (1 << attempt);
  if (delay.count() > 0) options_.sleep_fn(delay);
}

std::string RemoteProvider::chat_once(const std::string& system_prompt,
                                      const std::string& user_content) {
  json body{{"model", options_.model},
            {"messages", json::array({json{{"role", "system"}, {"content", system_prompt}},
                                      json{{"role", "user"}, {"content", user_content}}})},
            {"temperature", 0}};
  json res = transport_->post_json("/chat/completions", body);
  if (!res.contains("choices") || !res["choices"].is_array() || res["choices"].empty()) {
    throw MalformedResponse("no choices in completion");
  }
  const auto& message = res["choices"][0]["message"];
  if (!message.contains("content") || !message["content"].is_string()) {
    throw MalformedResponse("non-text completion payload");
  }
  return message["content"].get<std::string>();
}

std::string RemoteProvider::chat_with_retries(const std::string& system_prompt,
                                              const std::string& user_content) {
  for (int attempt = 0;; ++attempt) {
    try {
      return chat_once(system_prompt, user_content);
    } catch (const ProviderUnavailable&) {
      if (attempt + 1 >= options_.max_attempts) throw;
      backoff(attempt);
    }
  }
}

std::string RemoteProvider::rewrite_objective(const std::string& text) {
  std::string rewritten = chat_with_retries(kRewriteSystemPrompt, text);
  if (rewritten.empty()) throw MalformedResponse("empty rewrite");
  return rewritten;
}

SentimentIntensity RemoteProvider::sentiment_intensity(const std::string& text,
                                                       IntensitySource source) {
  for (int attempt = 0;; ++attempt) {
    std::optional<std::string> reply;
    try {
      reply = chat_once(kSentimentSystemPrompt, text);
    } catch (const ProviderUnavailable&) {
      if (attempt + 1 >= options_.max_attempts) throw;
    }
    if (reply) {
      if (auto value = parse_integer_0_100(*reply)) {
        return {*value / 100.0, source};
      }
      if (attempt + 1 >= options_.max_attempts) {
        throw UnparseableSentiment("unparseable sentiment reply: " + *reply);
      }
    }
    backoff(attempt);
  }
}

std::string RemoteProvider::paraphrase_sentences(const std::string& text, double fraction,
                                                 std::uint64_t seed) {
  if (fraction <= 0.0) return text;
  auto sentences = split_sentences(text);
  if (sentences.empty()) return text;
  auto count = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(sentences.size())));
  if (count > sentences.size()) count = sentences.size();
  auto order = shuffled_indices(sentences.size(), seed);
  for (std::size_t k = 0; k < count; ++k) {
    auto idx = order[k];
    const std::string& sentence = sentences[idx];
    auto tokens = tokenize_ws(sentence);
    if (tokens.empty()) continue;
    auto lead_ws = sentence.substr(0, sentence.find(tokens.front()));
    std::string body = sentence.substr(lead_ws.size());
    sentences[idx] = lead_ws + chat_with_retries(kParaphraseSystemPrompt, body);
  }
  std::string out;
  out.reserve(text.size());
  for (const auto& s : sentences) out += s;
  return out;
}

std::vector<TokenScore> RemoteProvider::token_scores(const std::string& text) {
  if (tokenize_ws(text).empty()) throw EmptyTokenization();

  json body{{"model", options_.model}, {"prompt", text},        {"max_tokens", 0},
            {"echo", true},            {"logprobs", options_.top_logprobs}};
  json res;
  for (int attempt = 0;; ++attempt) {
    try {
      res = transport_->post_json("/completions", body);
      break;
    } catch (const ProviderUnavailable&) {
      if (attempt + 1 >= options_.max_attempts) throw;
      backoff(attempt);
    }
  }

  if (!res.contains("choices") || !res["choices"].is_array() || res["choices"].empty() ||
      !res["choices"][0].contains("logprobs")) {
    throw MalformedResponse("no logprobs in completion");
  }
  const auto& lp = res["choices"][0]["logprobs"];
  if (!lp.contains("tokens") || !lp.contains("token_logprobs")) {
    throw MalformedResponse("incomplete logprobs payload");
  }
  const auto& tokens = lp["tokens"];
  const auto& token_logprobs = lp["token_logprobs"];
  const bool has_top = lp.contains("top_logprobs") && lp["top_logprobs"].is_array();

  std::vector<TokenScore> scores;
  for (std::size_t i = 0; i < tokens.size() && i < token_logprobs.size(); ++i) {
    if (token_logprobs[i].is_null()) continue;  // no context for the first token
    TokenScore ts;
    ts.token = tokens[i].get<std::string>();
    ts.logprob = std::min(token_logprobs[i].get<double>(), 0.0);

    // Only the top-k alternatives are visible: the rank is exact when the
    // token appears among them, otherwise capped at k + 1; the entropy of
    // the truncated distribution is a lower bound.
    std::uint64_t rank = 1;
    bool found = false;
    double entropy = 0.0;
    std::size_t k = 0;
    if (has_top && i < lp["top_logprobs"].size() && lp["top_logprobs"][i].is_object()) {
      for (const auto& [alt, alt_lp] : lp["top_logprobs"][i].items()) {
        double l = alt_lp.get<double>();
        double p = std::exp(l);
        entropy -= p * l;
        if (l > ts.logprob) ++rank;
        if (alt == ts.token) found = true;
        ++k;
      }
    }
    ts.rank = found ? rank : k + 1;
    ts.rank_capped = !found;
    ts.entropy = std::max(entropy, 0.0);
    ts.entropy_estimated = true;
    scores.push_back(std::move(ts));
  }
  if (scores.empty()) throw MalformedResponse("no scored positions");
  return scores;
}

}  // namespace sad
