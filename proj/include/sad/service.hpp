#pragma once

#include <memory>
#include <string>

#include "sad/config.hpp"
#include "sad/core.hpp"

namespace sad {

// The wire form shared by `sad detect` and POST /v1/detect:
//   {"ai_score": number, "components": object, "verdict": string|null}
std::string detection_wire_json(const DetectionResult& result);

// HTTP scoring service.
//
//   POST /v1/detect  {"text": string, "detector": optional string}
//                    -> 200 detection_wire_json
//                    -> 400 empty text / unknown detector / bad JSON
//                    -> 413 body over 1 MiB
//                    -> 502 provider failure
//   GET  /healthz    -> 200 "ok"
//
// Detector calls funnel through a semaphore sized by config.parallelism.
class DetectService {
 public:
  // The provider defaults to make_provider(config); tests may inject an
  // instrumented one.
  explicit DetectService(AppConfig config, std::shared_ptr<Provider> provider = nullptr);
  ~DetectService();

  DetectService(const DetectService&) = delete;
  DetectService& operator=(const DetectService&) = delete;

  // Binds to host:port (port 0 picks a free port). Returns false when the
  // address is not bindable.
  bool bind(const std::string& host, int port);
  int port() const { return port_; }

  // Blocks until stop(). Call bind() first.
  bool serve();

  // Graceful: stops accepting and lets in-flight requests finish.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

constexpr std::size_t kMaxRequestBody = 1024 * 1024;

}  // namespace sad
