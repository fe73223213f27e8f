#include <thread>

#include "doctest.h"
#include "fakes.hpp"
#include "httplib.h"
#include "json.hpp"
#include "sad/detectors.hpp"
#include "sad/mock_provider.hpp"
#include "sad/service.hpp"

using namespace sad;
using nlohmann::json;

namespace {

struct RunningService {
  explicit RunningService(AppConfig config, std::shared_ptr<Provider> provider = nullptr)
      : service(std::move(config), std::move(provider)) {
    REQUIRE(service.bind("127.0.0.1", 0));
    thread = std::thread([this] { service.serve(); });
    // wait for the listener
    httplib::Client probe(base());
    for (int i = 0; i < 100; ++i) {
      if (auto res = probe.Get("/healthz"); res && res->status == 200) break;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }

  ~RunningService() {
    service.stop();
    thread.join();
  }

  std::string base() const { return "http://127.0.0.1:" + std::to_string(service.port()); }

  DetectService service;
  std::thread thread;
};

AppConfig mock_config() {
  AppConfig config;
  config.provider = ProviderKind::Mock;
  config.model_id = "mock-ngram-2";
  return config;
}

}  // namespace

TEST_CASE("service routes") {
  RunningService rs(mock_config());
  httplib::Client client(rs.base());

  SUBCASE("health") {
    auto res = client.Get("/healthz");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == "ok");
  }

  SUBCASE("detect matches the library result byte for byte") {
    auto res = client.Post("/v1/detect",
                           json{{"text", "The terrible crash was awful news"},
                                {"detector", "sad"}}
                               .dump(),
                           "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    MockProvider mock;
    auto expected = detection_wire_json(sad_detect("The terrible crash was awful news", mock));
    CHECK(res->body == expected);
  }

  SUBCASE("default detector is sad") {
    auto res = client.Post("/v1/detect", json{{"text", "plain words"}}.dump(),
                           "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    auto body = json::parse(res->body);
    CHECK(body["ai_score"] == 0.0);
    CHECK(body.contains("components"));
    CHECK(body["verdict"].is_null());
  }

  SUBCASE("empty text is a 400") {
    auto res = client.Post("/v1/detect", json{{"text", ""}}.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);
    auto whitespace =
        client.Post("/v1/detect", json{{"text", "  \t "}}.dump(), "application/json");
    CHECK(whitespace->status == 400);
  }

  SUBCASE("unknown detector is a 400") {
    auto res = client.Post("/v1/detect", json{{"text", "x"}, {"detector", "oracle"}}.dump(),
                           "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);
  }

  SUBCASE("invalid json is a 400") {
    auto res = client.Post("/v1/detect", "{nope", "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);
  }

  SUBCASE("oversized body is a 413") {
    json body{{"text", std::string(kMaxRequestBody + 64, 'a')}, {"detector", "sad"}};
    auto res = client.Post("/v1/detect", body.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 413);
  }
}

TEST_CASE("service bounds provider concurrency by config.parallelism") {
  AppConfig config = mock_config();
  config.parallelism = 2;
  auto counting = std::make_shared<fakes::CountingProvider>(std::make_shared<MockProvider>(),
                                                            std::chrono::milliseconds(40));
  RunningService rs(config, counting);

  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&rs, i] {
      httplib::Client client(rs.base());
      client.Post("/v1/detect",
                  json{{"text", "the awful result number " + std::to_string(i)},
                       {"detector", "sad"}}
                      .dump(),
                  "application/json");
    });
  }
  for (auto& t : threads) t.join();
  CHECK(counting->max_in_flight() <= 2);
  CHECK(counting->total_calls() >= 8);
}

TEST_CASE("service reports provider failures as 502") {
  // remote provider pointed at a dead port, with no retry delay
  AppConfig config;
  config.provider = ProviderKind::Remote;
  config.api_base = "http://127.0.0.1:1/v1";
  config.api_key = "k";
  config.remote_backoff = std::chrono::milliseconds(0);
  RunningService rs(std::move(config));

  httplib::Client client(rs.base());
  auto res = client.Post("/v1/detect", json{{"text", "hello there"}, {"detector", "sad"}}.dump(),
                         "application/json");
  REQUIRE(res);
  CHECK(res->status == 502);
}
