#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sad {

enum class Label { Human, Machine, Unknown };
enum class Domain { News, Code, Review, Other };

const std::string& to_string(Label label);
const std::string& to_string(Domain domain);
std::optional<Label> label_from_string(const std::string& s);
std::optional<Domain> domain_from_string(const std::string& s);

// One labeled text; the atom of every dataset and evaluation.
struct TextSample {
  std::string id;
  std::string text;
  Label label = Label::Unknown;
  Domain domain = Domain::Other;
  std::map<std::string, std::string> meta;

  bool operator==(const TextSample&) const = default;
};

struct Dataset {
  std::string name;
  std::vector<TextSample> samples;

  bool operator==(const Dataset&) const = default;
};

enum class IntensitySource { Original, Rewritten };

// Emotional intensity in [0, 1]; 0 = fully neutral.
struct SentimentIntensity {
  double value = 0.0;
  IntensitySource source = IntensitySource::Original;

  bool operator==(const SentimentIntensity&) const = default;
};

// A detector's output. ai_score orientation is shared by all detectors:
// strictly higher means more likely machine-generated.
struct DetectionResult {
  std::string detector_id;
  double ai_score = 0.0;
  std::map<std::string, double> components;
  std::optional<Label> verdict;

  bool operator==(const DetectionResult&) const = default;
};

// Checks sample invariants (distinct ids, non-blank text) and normalizes
// line endings inside sample text to LF. Idempotent.
Dataset validate_dataset(Dataset raw);

// Splits on runs of Unicode whitespace; never yields empty tokens.
std::vector<std::string> tokenize_ws(const std::string& text);

// First min(max_tokens, token_count) whitespace tokens rejoined with single
// spaces. Idempotent once the text has at most max_tokens tokens.
std::string truncate_tokens(const std::string& text, std::size_t max_tokens);

// Splits on {. ! ? newline}, keeping each terminator run with its sentence.
// Concatenating the pieces reproduces the input byte for byte.
std::vector<std::string> split_sentences(const std::string& text);

// Lookup form for lexicon and synonym matching: leading/trailing ASCII
// punctuation stripped, ASCII letters lowercased.
std::string normalize_token(const std::string& token);

}  // namespace sad
