#include "sad/core.hpp"

#include <cctype>
#include <unordered_set>

#include "sad/errors.hpp"

namespace sad {

const std::string& to_string(Label label) {
  static const std::string human = "human", machine = "machine", unknown = "unknown";
  switch (label) {
    case Label::Human: return human;
    case Label::Machine: return machine;
    default: return unknown;
  }
}

const std::string& to_string(Domain domain) {
  static const std::string news = "news", code = "code", review = "review", other = "other";
  switch (domain) {
    case Domain::News: return news;
    case Domain::Code: return code;
    case Domain::Review: return review;
    default: return other;
  }
}

std::optional<Label> label_from_string(const std::string& s) {
  if (s == "human") return Label::Human;
  if (s == "machine") return Label::Machine;
  if (s == "unknown") return Label::Unknown;
  return std::nullopt;
}

std::optional<Domain> domain_from_string(const std::string& s) {
  if (s == "news") return Domain::News;
  if (s == "code") return Domain::Code;
  if (s == "review") return Domain::Review;
  if (s == "other") return Domain::Other;
  return std::nullopt;
}

namespace {

bool is_space_codepoint(char32_t c) {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

// Decodes one UTF-8 codepoint at position i, writing its byte length to len.
// Malformed bytes decode as themselves with length 1 (never whitespace).
char32_t decode_utf8(const std::string& s, std::size_t i, std::size_t& len) {
  unsigned char b0 = static_cast<unsigned char>(s[i]);
  len = 1;
  if (b0 < 0x80) return b0;
  int n = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) { n = 1; cp = b0 & 0x1F; }
  else if ((b0 & 0xF0) == 0xE0) { n = 2; cp = b0 & 0x0F; }
  else if ((b0 & 0xF8) == 0xF0) { n = 3; cp = b0 & 0x07; }
  else return b0;
  if (i + static_cast<std::size_t>(n) >= s.size()) return b0;
  for (int k = 1; k <= n; ++k) {
    unsigned char bk = static_cast<unsigned char>(s[i + k]);
    if ((bk & 0xC0) != 0x80) return b0;
    cp = (cp << 6) | (bk & 0x3F);
  }
  len = static_cast<std::size_t>(n) + 1;
  return cp;
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?' || c == '\n'; }

std::string normalize_line_endings(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

}  // namespace

Dataset validate_dataset(Dataset raw) {
  std::unordered_set<std::string> seen;
  seen.reserve(raw.samples.size());
  for (auto& sample : raw.samples) {
    if (!seen.insert(sample.id).second) throw DuplicateIdError(sample.id);
    sample.text = normalize_line_endings(sample.text);
    if (tokenize_ws(sample.text).empty()) throw EmptyTextError(sample.id);
  }
  return raw;
}

std::vector<std::string> tokenize_ws(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0, start = 0;
  bool in_token = false;
  while (i < text.size()) {
    std::size_t len = 0;
    char32_t cp = decode_utf8(text, i, len);
    if (is_space_codepoint(cp)) {
      if (in_token) {
        tokens.push_back(text.substr(start, i - start));
        in_token = false;
      }
    } else if (!in_token) {
      start = i;
      in_token = true;
    }
    i += len;
  }
  if (in_token) tokens.push_back(text.substr(start));
  return tokens;
}

std::string truncate_tokens(const std::string& text, std::size_t max_tokens) {
  auto tokens = tokenize_ws(text);
  if (tokens.size() > max_tokens) tokens.resize(max_tokens);
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> sentences;
  std::size_t start = 0, i = 0;
  while (i < text.size()) {
    if (is_terminator(text[i])) {
      while (i + 1 < text.size() && is_terminator(text[i + 1])) ++i;
      sentences.push_back(text.substr(start, i - start + 1));
      start = ++i;
    } else {
      ++i;
    }
  }
  if (start < text.size()) sentences.push_back(text.substr(start));
  return sentences;
}

std::string normalize_token(const std::string& token) {
  auto keep = [](unsigned char c) { return c >= 0x80 || std::isalnum(c); };
  std::size_t b = 0, e = token.size();
  while (b < e && !keep(static_cast<unsigned char>(token[b]))) ++b;
  while (e > b && !keep(static_cast<unsigned char>(token[e - 1]))) --e;
  std::string out = token.substr(b, e - b);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace sad
