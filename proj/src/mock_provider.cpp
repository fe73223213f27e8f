#include "sad/mock_provider.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sad/builtin_data.hpp"
#include "sad/core.hpp"
#include "sad/errors.hpp"
#include "sad/util.hpp"

namespace sad {

namespace {

void parse_lexicon(std::string_view tsv, std::map<std::string, double>& out) {
  std::istringstream lines{std::string(tsv)};
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error("lexicon line without tab: " + line);
    out[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
  }
}

void parse_synonyms(std::string_view tsv, std::map<std::string, std::string>& out) {
  std::istringstream lines{std::string(tsv)};
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error("synonym line without tab: " + line);
    out[line.substr(0, tab)] = line.substr(tab + 1);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Splits a token into (leading punctuation, core, trailing punctuation).
struct TokenParts {
  std::string lead, core, trail;
};

TokenParts split_token(const std::string& token) {
  auto keep = [](unsigned char c) { return c >= 0x80 || std::isalnum(c); };
  std::size_t b = 0, e = token.size();
  while (b < e && !keep(static_cast<unsigned char>(token[b]))) ++b;
  while (e > b && !keep(static_cast<unsigned char>(token[e - 1]))) --e;
  return {token.substr(0, b), token.substr(b, e - b), token.substr(e)};
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

const MockData& MockData::builtin() {
  static const MockData instance = [] {
    MockData d;
    parse_lexicon(data::emotion_lexicon_tsv(), d.lexicon);
    parse_synonyms(data::synonyms_tsv(), d.synonyms);
    d.corpus.reserve(data::templates_news().size() + data::templates_code().size() +
                     data::templates_review().size() + 2);
    d.corpus.append(data::templates_news());
    d.corpus.append(data::templates_code());
    d.corpus.append(data::templates_review());
    return d;
  }();
  return instance;
}

MockData MockData::load_dir(const std::filesystem::path& dir) {
  MockData d;
  parse_lexicon(read_file(dir / "emotion_lexicon.tsv"), d.lexicon);
  parse_synonyms(read_file(dir / "synonyms.tsv"), d.synonyms);
  for (const char* name : {"templates_news.txt", "templates_code.txt", "templates_review.txt"}) {
    d.corpus += read_file(dir / name);
  }
  return d;
}

MockProvider::MockProvider() : MockProvider(MockData::builtin()) {}

MockProvider::MockProvider(MockData data)
    : data_(std::move(data)), model_(NgramModel::train(data_.corpus)) {}

double MockProvider::lexicon_weight(const std::string& token) const {
  auto it = data_.lexicon.find(normalize_token(token));
  return it == data_.lexicon.end() ? 0.0 : it->second;
}

std::string MockProvider::rewrite_objective(const std::string& text) {
  auto tokens = tokenize_ws(text);
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (auto& token : tokens) {
    if (lexicon_weight(token) == 0.0) kept.push_back(std::move(token));
  }
  // Never return an empty rewrite; a text made entirely of emotion words
  // has no neutral residue, so it is its own best objective form.
  if (kept.empty()) return text;
  return join_tokens(kept);
}

SentimentIntensity MockProvider::sentiment_intensity(const std::string& text,
                                                     IntensitySource source) {
  auto tokens = tokenize_ws(text);
  if (tokens.empty()) return {0.0, source};
  double sum = 0.0;
  for (const auto& token : tokens) sum += lexicon_weight(token);
  double value = kMockSentimentScale * sum / static_cast<double>(tokens.size());
  return {std::clamp(value, 0.0, 1.0), source};
}

std::string MockProvider::paraphrase_sentence(const std::string& sentence) const {
  auto tokens = tokenize_ws(sentence);
  if (tokens.empty()) return sentence;

  auto lead_ws = sentence.substr(0, sentence.find(tokens.front()));
  bool changed = false;
  for (auto& token : tokens) {
    auto parts = split_token(token);
    auto it = data_.synonyms.find(ascii_lower(parts.core));
    if (it == data_.synonyms.end()) continue;
    std::string replacement = it->second;
    if (!parts.core.empty() && parts.core[0] >= 'A' && parts.core[0] <= 'Z' &&
        !replacement.empty()) {
      replacement[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
    }
    token = parts.lead + replacement + parts.trail;
    changed = true;
  }
  // No synonym fired: swap the two leading tokens so the paraphrase still
  // differs, keeping the final token (and its terminator) in place.
  if (!changed && tokens.size() >= 3) std::swap(tokens[0], tokens[1]);
  return lead_ws + join_tokens(tokens);
}

std::string MockProvider::paraphrase_sentences(const std::string& text, double fraction,
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
    sentences[idx] = paraphrase_sentence(sentences[idx]);
  }
  std::string out;
  out.reserve(text.size());
  for (const auto& s : sentences) out += s;
  return out;
}

std::vector<TokenScore> MockProvider::token_scores(const std::string& text) {
  auto tokens = tokenize_ws(text);
  if (tokens.empty()) throw EmptyTokenization();
  std::vector<TokenScore> scores;
  scores.reserve(tokens.size());
  std::string context = NgramModel::kStartContext;
  for (auto& token : tokens) {
    std::string low = ascii_lower(token);
    auto ps = model_.score(context, low);
    scores.push_back({std::move(token), ps.logprob, ps.rank, false, ps.entropy, false});
    context = std::move(low);
  }
  return scores;
}

}  // namespace sad
