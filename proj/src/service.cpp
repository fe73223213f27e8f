#include "sad/service.hpp"

#include <semaphore>

#include "httplib.h"
#include "json.hpp"
#include "sad/errors.hpp"
#include "sad/util.hpp"

namespace sad {

using nlohmann::json;

std::string detection_wire_json(const DetectionResult& result) {
  json j{{"ai_score", result.ai_score},
         {"components", result.components},
         {"verdict", result.verdict ? json(to_string(*result.verdict)) : json(nullptr)}};
  return j.dump();
}

struct DetectService::Impl {
  Impl(AppConfig cfg, std::shared_ptr<Provider> override_provider)
      : config(std::move(cfg)),
        provider(override_provider ? std::move(override_provider) : make_provider(config)),
        slots(config.parallelism) {}

  AppConfig config;
  std::shared_ptr<Provider> provider;
  std::counting_semaphore<> slots;
  httplib::Server server;
};

DetectService::DetectService(AppConfig config, std::shared_ptr<Provider> provider)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(provider))) {
  auto& server = impl_->server;
  server.set_payload_max_length(kMaxRequestBody);  // larger bodies get 413

  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });

  server.Post("/v1/detect", [this](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      res.status = 400;
      res.set_content(json{{"error", "request body is not valid JSON"}}.dump(), "application/json");
      return;
    }
    std::string text = body.is_object() && body.contains("text") && body["text"].is_string()
                           ? body["text"].get<std::string>()
                           : std::string();
    if (tokenize_ws(text).empty()) {
      res.status = 400;
      res.set_content(json{{"error", "empty text"}}.dump(), "application/json");
      return;
    }
    std::string detector = "sad";
    if (body.contains("detector")) {
      if (!body["detector"].is_string()) {
        res.status = 400;
        res.set_content(json{{"error", "detector must be a string"}}.dump(), "application/json");
        return;
      }
      detector = body["detector"].get<std::string>();
    }

    Scorer scorer;
    try {
      scorer = make_scorer(detector, *impl_->provider, scorer_options(impl_->config));
    } catch (const ConfigError& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
      return;
    }

    // Detector calls funnel through the shared bounded provider pool.
    impl_->slots.acquire();
    try {
      DetectionResult result = scorer(text);
      impl_->slots.release();
      res.set_content(detection_wire_json(result), "application/json");
    } catch (const Error& e) {
      impl_->slots.release();
      res.status = 502;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    } catch (...) {
      impl_->slots.release();
      res.status = 500;
      res.set_content(json{{"error", "internal error"}}.dump(), "application/json");
    }
  });
}

DetectService::~DetectService() = default;

bool DetectService::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port(host);
    return port_ > 0;
  }
  if (!impl_->server.bind_to_port(host, port)) return false;
  port_ = port;
  return true;
}

bool DetectService::serve() { return impl_->server.listen_after_bind(); }

void DetectService::stop() { impl_->server.stop(); }

}  // namespace sad
