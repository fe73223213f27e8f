#include "sad/cache.hpp"

#include <iostream>

#include "json.hpp"
#include "sad/errors.hpp"
#include "sad/util.hpp"

namespace sad {

using nlohmann::json;

namespace {

bool is_hex64(const std::string& s) {
  if (s.size() != 64) return false;
  for (char c : s) {
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    if (!ok) return false;
  }
  return true;
}

json scores_to_json(const std::vector<TokenScore>& scores) {
  json arr = json::array();
  for (const auto& s : scores) {
    arr.push_back(json{{"token", s.token},
                       {"logprob", s.logprob},
                       {"rank", s.rank},
                       {"rank_capped", s.rank_capped},
                       {"entropy", s.entropy},
                       {"entropy_estimated", s.entropy_estimated}});
  }
  return arr;
}

std::vector<TokenScore> scores_from_json(const json& arr) {
  std::vector<TokenScore> scores;
  scores.reserve(arr.size());
  for (const auto& j : arr) {
    scores.push_back({j.at("token").get<std::string>(), j.at("logprob").get<double>(),
                      j.at("rank").get<std::uint64_t>(), j.at("rank_capped").get<bool>(),
                      j.at("entropy").get<double>(), j.at("entropy_estimated").get<bool>()});
  }
  return scores;
}

}  // namespace

ResponseCache::ResponseCache(std::filesystem::path file) : file_(std::move(file)) {
  if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());

  std::ifstream in(file_, std::ios::binary);
  if (in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto t1 = line.find('\t');
      auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
      auto t3 = t2 == std::string::npos ? std::string::npos : line.find('\t', t2 + 1);
      if (t3 == std::string::npos || line.find('\t', t3 + 1) != std::string::npos) {
        std::cerr << "cache: skipping corrupt record at line " << line_no << "\n";
        continue;
      }
      std::string key = line.substr(0, t1);
      std::string value_b64 = line.substr(t2 + 1, t3 - t2 - 1);
      if (!is_hex64(key)) {
        std::cerr << "cache: skipping corrupt record at line " << line_no << "\n";
        continue;
      }
      try {
        entries_[key] = base64_decode(value_b64);  // last write wins
      } catch (const Error&) {
        std::cerr << "cache: skipping corrupt record at line " << line_no << "\n";
      }
    }
  }

  out_.open(file_, std::ios::binary | std::ios::app);
  if (!out_) throw IoError("cannot open cache for append: " + file_.string());
}

std::optional<std::string> ResponseCache::get(const std::string& key) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResponseCache::put(const std::string& key, const std::string& operation,
                        const std::string& value) {
  std::lock_guard lock(mu_);
  out_ << key << '\t' << operation << '\t' << base64_encode(value) << '\t' << rfc3339_utc_now()
       << '\n';
  out_.flush();
  entries_[key] = value;
}

std::size_t ResponseCache::record_count() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

CachingProvider::CachingProvider(std::shared_ptr<Provider> inner,
                                 std::shared_ptr<ResponseCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

std::string CachingProvider::cache_key(const std::string& operation,
                                       const std::string& canonical_input) const {
  json identity = json::array(
      {inner_->provider_id(), inner_->model_id(), inner_->prompt_version(), operation,
       canonical_input});
  return sha256_hex(identity.dump());
}

std::string CachingProvider::through(const std::string& operation,
                                     const std::string& canonical_input,
                                     const std::function<std::string()>& compute) {
  const std::string key = cache_key(operation, canonical_input);
  if (auto hit = cache_->get(key)) return *hit;

  // Single flight per key: concurrent callers wait for the first compute
  // instead of invoking the inner provider again.
  std::promise<std::string> promise;
  std::shared_future<std::string> waiter;
  bool owner = false;
  {
    std::lock_guard lock(inflight_mu_);
    auto it = inflight_.find(key);
    if (it != inflight_.end()) {
      waiter = it->second;
    } else {
      if (auto hit = cache_->get(key)) return *hit;
      waiter = promise.get_future().share();
      inflight_.emplace(key, waiter);
      owner = true;
    }
  }
  if (!owner) return waiter.get();

  try {
    std::string value = compute();
    cache_->put(key, operation, value);
    promise.set_value(value);
    std::lock_guard lock(inflight_mu_);
    inflight_.erase(key);
    return value;
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard lock(inflight_mu_);
    inflight_.erase(key);
    throw;
  }
}

std::string CachingProvider::rewrite_objective(const std::string& text) {
  return through("rewrite_objective", text, [&] { return inner_->rewrite_objective(text); });
}

SentimentIntensity CachingProvider::sentiment_intensity(const std::string& text,
                                                        IntensitySource source) {
  std::string value = through("sentiment_intensity", text, [&] {
    return json(inner_->sentiment_intensity(text, source).value).dump();
  });
  return {json::parse(value).get<double>(), source};
}

std::string CachingProvider::paraphrase_sentences(const std::string& text, double fraction,
                                                  std::uint64_t seed) {
  json input{{"text", text}, {"fraction", fraction}, {"seed", seed}};
  return through("paraphrase_sentences", input.dump(),
                 [&] { return inner_->paraphrase_sentences(text, fraction, seed); });
}

std::vector<TokenScore> CachingProvider::token_scores(const std::string& text) {
  std::string value = through("token_scores", text,
                              [&] { return scores_to_json(inner_->token_scores(text)).dump(); });
  return scores_from_json(json::parse(value));
}

}  // namespace sad
