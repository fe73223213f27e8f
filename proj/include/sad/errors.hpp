#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sad {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dataset validation.

struct DuplicateIdError : Error {
  explicit DuplicateIdError(std::string sample_id)
      : Error("duplicate sample id: " + sample_id), id(std::move(sample_id)) {}
  std::string id;
};

struct EmptyTextError : Error {
  explicit EmptyTextError(std::string sample_id)
      : Error("empty text in sample: " + sample_id), id(std::move(sample_id)) {}
  std::string id;
};

struct UnknownLabelError : Error {
  explicit UnknownLabelError(std::string sample_id)
      : Error("unknown label in sample: " + sample_id), id(std::move(sample_id)) {}
  std::string id;
};

struct DatasetFormatError : Error {
  using Error::Error;
};

// Provider surface.

struct ProviderUnavailable : Error {
  using Error::Error;
};

struct MalformedResponse : Error {
  using Error::Error;
};

struct UnparseableSentiment : Error {
  using Error::Error;
};

struct EmptyTokenization : Error {
  EmptyTokenization() : Error("text has no tokens") {}
};

// Detectors.

struct RewriteCollapsed : Error {
  RewriteCollapsed() : Error("objectivity rewrite returned empty text") {}
};

struct DegenerateLabels : Error {
  using Error::Error;
};

struct DegeneratePerturbations : Error {
  DegeneratePerturbations() : Error("all perturbed texts equal the original") {}
};

// Harness.

struct EvalPartialFailure : Error {
  explicit EvalPartialFailure(std::vector<std::string> ids)
      : Error("evaluation failed for " + std::to_string(ids.size()) + " sample(s)"),
        failed_ids(std::move(ids)) {}
  std::vector<std::string> failed_ids;
};

struct IoError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace sad
