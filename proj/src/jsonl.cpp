#include "sad/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sad/errors.hpp"

namespace sad {

using nlohmann::json;

Dataset load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetFormatError("cannot open dataset: " + path.string());

  Dataset dataset;
  dataset.name = path.stem().string();

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DatasetFormatError(path.string() + ":" + std::to_string(line_no) +
                               ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("text") || !j.contains("label") ||
        !j.contains("domain") || !j["id"].is_string() || !j["text"].is_string() ||
        !j["label"].is_string() || !j["domain"].is_string()) {
      throw DatasetFormatError(path.string() + ":" + std::to_string(line_no) +
                               ": expected object with string id/text/label/domain");
    }

    TextSample sample;
    sample.id = j["id"].get<std::string>();
    sample.text = j["text"].get<std::string>();

    auto label = label_from_string(j["label"].get<std::string>());
    if (!label) throw UnknownLabelError(sample.id);
    sample.label = *label;

    auto domain = domain_from_string(j["domain"].get<std::string>());
    if (!domain) {
      throw DatasetFormatError(path.string() + ":" + std::to_string(line_no) +
                               ": unknown domain \"" + j["domain"].get<std::string>() + "\"");
    }
    sample.domain = *domain;

    if (j.contains("meta")) {
      if (!j["meta"].is_object()) {
        throw DatasetFormatError(path.string() + ":" + std::to_string(line_no) +
                                 ": meta must be an object");
      }
      for (const auto& [k, v] : j["meta"].items()) {
        if (!v.is_string()) {
          throw DatasetFormatError(path.string() + ":" + std::to_string(line_no) +
                                   ": meta values must be strings");
        }
        sample.meta[k] = v.get<std::string>();
      }
    }
    dataset.samples.push_back(std::move(sample));
  }
  return validate_dataset(std::move(dataset));
}

void save_jsonl(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write dataset: " + path.string());
  for (const auto& sample : dataset.samples) {
    json j{{"id", sample.id},
           {"text", sample.text},
           {"label", to_string(sample.label)},
           {"domain", to_string(sample.domain)}};
    if (!sample.meta.empty()) j["meta"] = sample.meta;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("short write: " + path.string());
}

}  // namespace sad
