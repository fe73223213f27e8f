#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "doctest.h"
#include "fakes.hpp"
#include "sad/cache.hpp"
#include "sad/mock_provider.hpp"
#include "sad/util.hpp"

using namespace sad;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("sad_cache_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("cache serves repeats without touching the inner provider") {
  auto dir = fresh_dir("repeat");
  auto inner = std::make_shared<fakes::CountingProvider>(std::make_shared<MockProvider>());
  auto cache = std::make_shared<ResponseCache>(dir / "responses.cache");
  CachingProvider provider(inner, cache);

  auto first = provider.sentiment_intensity("the dreadful report", IntensitySource::Original);
  auto second = provider.sentiment_intensity("the dreadful report", IntensitySource::Original);
  CHECK(first.value == second.value);
  CHECK(inner->total_calls() == 1);
  CHECK(cache->record_count() == 1);
}

TEST_CASE("cache records survive a restart") {
  auto dir = fresh_dir("restart");
  auto inner = std::make_shared<fakes::CountingProvider>(std::make_shared<MockProvider>());
  {
    CachingProvider provider(inner, std::make_shared<ResponseCache>(dir / "responses.cache"));
    provider.rewrite_objective("the awful outcome");
  }
  {
    CachingProvider provider(inner, std::make_shared<ResponseCache>(dir / "responses.cache"));
    CHECK(provider.rewrite_objective("the awful outcome") == "the outcome");
  }
  CHECK(inner->total_calls() == 1);
}

TEST_CASE("prompt version participates in the cache key") {
  auto dir = fresh_dir("version");
  auto inner = std::make_shared<fakes::CountingProvider>(std::make_shared<MockProvider>());
  auto cache = std::make_shared<ResponseCache>(dir / "responses.cache");
  {
    CachingProvider provider(inner, cache);
    provider.rewrite_objective("steady text");
  }
  inner->version_override = "mock-2";
  {
    CachingProvider provider(inner, cache);
    provider.rewrite_objective("steady text");
  }
  CHECK(inner->total_calls() == 2);
  CHECK(cache->record_count() == 2);
}

TEST_CASE("token scores round-trip through the cache exactly") {
  auto dir = fresh_dir("scores");
  auto inner = std::make_shared<fakes::CountingProvider>(std::make_shared<MockProvider>());
  CachingProvider provider(inner, std::make_shared<ResponseCache>(dir / "responses.cache"));

  auto direct = provider.token_scores("the committee approved the annual budget today.");
  auto cached = provider.token_scores("the committee approved the annual budget today.");
  CHECK(inner->total_calls() == 1);
  CHECK(direct == cached);
}

TEST_CASE("corrupt cache lines are skipped, the rest load") {
  auto dir = fresh_dir("corrupt");
  auto file = dir / "responses.cache";
  {
    ResponseCache cache(file);
    cache.put(sha256_hex("k1"), "rewrite_objective", "value one");
    cache.put(sha256_hex("k2"), "rewrite_objective", "value two");
  }
  {
    std::ofstream out(file, std::ios::app | std::ios::binary);
    out << "garbage line with no tabs\n";
    out << "deadbeef\top\t!!!not-base64!!!\t2024-01-01T00:00:00Z\n";
  }
  ResponseCache reloaded(file);
  CHECK(reloaded.record_count() == 2);
  CHECK(reloaded.get(sha256_hex("k1")) == std::string("value one"));
  CHECK(reloaded.get(sha256_hex("k2")) == std::string("value two"));
  CHECK(!reloaded.get(sha256_hex("k3")).has_value());
}

TEST_CASE("last write wins on duplicate keys") {
  auto dir = fresh_dir("dup");
  auto file = dir / "responses.cache";
  {
    ResponseCache cache(file);
    cache.put(sha256_hex("k"), "op", "old");
    cache.put(sha256_hex("k"), "op", "new");
  }
  ResponseCache reloaded(file);
  CHECK(reloaded.get(sha256_hex("k")) == std::string("new"));
}

TEST_CASE("concurrent identical calls invoke the inner provider once") {
  auto dir = fresh_dir("flight");
  auto inner = std::make_shared<fakes::CountingProvider>(std::make_shared<MockProvider>(),
                                                         std::chrono::milliseconds(30));
  CachingProvider provider(inner, std::make_shared<ResponseCache>(dir / "responses.cache"));

  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back(
        [&] { provider.sentiment_intensity("shared text", IntensitySource::Original); });
  }
  for (auto& t : threads) t.join();
  CHECK(inner->total_calls() == 1);
}

TEST_CASE("inner invocations equal distinct cache keys over random call sequences") {
  auto dir = fresh_dir("sequence");
  auto inner = std::make_shared<fakes::CountingProvider>(std::make_shared<MockProvider>());
  CachingProvider provider(inner, std::make_shared<ResponseCache>(dir / "responses.cache"));

  std::mt19937_64 rng(61);
  std::set<std::string> distinct;
  for (int i = 0; i < 200; ++i) {
    std::string text = "text " + std::to_string(uniform_index(rng, 12));
    switch (uniform_index(rng, 3)) {
      case 0:
        provider.rewrite_objective(text);
        distinct.insert("r|" + text);
        break;
      case 1:
        provider.sentiment_intensity(text, IntensitySource::Original);
        distinct.insert("s|" + text);
        break;
      default: {
        auto seed = uniform_index(rng, 3);
        provider.paraphrase_sentences(text, 0.5, seed);
        distinct.insert("p|" + text + "|" + std::to_string(seed));
        break;
      }
    }
  }
  CHECK(inner->total_calls() == static_cast<int>(distinct.size()));
}
