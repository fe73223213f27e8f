#include <random>

#include "doctest.h"
#include "sad/core.hpp"
#include "sad/errors.hpp"
#include "sad/util.hpp"

using namespace sad;

namespace {

std::string join_ws(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

// Random strings mixing letters, whitespace and sentence terminators.
std::string random_text(std::mt19937_64& rng, std::size_t max_len) {
  static const std::string alphabet = "abc XY.!?\n\t  zq,;";
  std::size_t len = uniform_index(rng, max_len + 1);
  std::string out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(alphabet[uniform_index(rng, alphabet.size())]);
  return out;
}

}  // namespace

TEST_CASE("tokenize_ws splits on whitespace runs") {
  CHECK(tokenize_ws("a  b\tc") == std::vector<std::string>{"a", "b", "c"});
  CHECK(tokenize_ws("") == std::vector<std::string>{});
  CHECK(tokenize_ws("   \n\t ") == std::vector<std::string>{});
  CHECK(tokenize_ws("hello, world!") == std::vector<std::string>{"hello,", "world!"});
}

TEST_CASE("tokenize_ws treats unicode whitespace as separators") {
  // NBSP and ideographic space between tokens
  CHECK(tokenize_ws("a b") == std::vector<std::string>{"a", "b"});
  CHECK(tokenize_ws("x　y z") == std::vector<std::string>{"x", "y", "z"});
  // multi-byte non-space content survives intact
  CHECK(tokenize_ws("café bar") == std::vector<std::string>{"café", "bar"});
}

TEST_CASE("tokenize_ws canonical form is stable") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::string text = random_text(rng, 60);
    auto tokens = tokenize_ws(text);
    CHECK(tokenize_ws(join_ws(tokens)) == tokens);
    for (const auto& t : tokens) CHECK(!t.empty());
  }
}

TEST_CASE("truncate_tokens") {
  CHECK(truncate_tokens("a b c d", 2) == "a b");
  CHECK(truncate_tokens("a b", 10) == "a b");

  // 200-token synthetic text, checked through the tokenizer
  std::vector<std::string> tokens;
  for (int i = 0; i < 200; ++i) tokens.push_back("w" + std::to_string(i));
  std::string text = join_ws(tokens);
  CHECK(tokenize_ws(truncate_tokens(text, 20)).size() == 20);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    std::string t = random_text(rng, 80);
    std::size_t n = 1 + uniform_index(rng, 10);
    CHECK(tokenize_ws(truncate_tokens(t, n)).size() <= n);
  }
}

TEST_CASE("split_sentences keeps terminators and round-trips") {
  CHECK(split_sentences("Hi. Bye!") == std::vector<std::string>{"Hi.", " Bye!"});
  CHECK(split_sentences("no terminator") == std::vector<std::string>{"no terminator"});
  CHECK(split_sentences("A? B. C") == std::vector<std::string>{"A?", " B.", " C"});
  CHECK(split_sentences("") == std::vector<std::string>{});
  CHECK(split_sentences("Wait... done") == std::vector<std::string>{"Wait...", " done"});
  CHECK(split_sentences("a\r\nb") == std::vector<std::string>{"a\r\n", "b"});
}

TEST_CASE("split_sentences round-trip property") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 500; ++i) {
    std::string text = random_text(rng, 120);
    auto sentences = split_sentences(text);
    std::string rejoined;
    for (const auto& s : sentences) rejoined += s;
    CHECK(rejoined == text);
  }
}

TEST_CASE("normalize_token strips edge punctuation and lowercases") {
  CHECK(normalize_token("Awful.") == "awful");
  CHECK(normalize_token("'quoted'") == "quoted");
  CHECK(normalize_token("...") == "");
  CHECK(normalize_token("don't") == "don't");
}

TEST_CASE("validate_dataset") {
  Dataset d{"d",
            {{"a", "hello world", Label::Human, Domain::News, {}},
             {"b", "generated text", Label::Machine, Domain::News, {}}}};

  SUBCASE("identity on valid input") {
    CHECK(validate_dataset(d) == d);
  }
  SUBCASE("idempotent") {
    CHECK(validate_dataset(validate_dataset(d)) == validate_dataset(d));
  }
  SUBCASE("duplicate ids rejected") {
    d.samples[1].id = "a";
    CHECK_THROWS_AS(validate_dataset(d), DuplicateIdError);
  }
  SUBCASE("blank text rejected") {
    d.samples[0].text = "   ";
    CHECK_THROWS_AS(validate_dataset(d), EmptyTextError);
  }
  SUBCASE("line endings normalized to LF") {
    d.samples[0].text = "one\r\ntwo\rthree";
    CHECK(validate_dataset(d).samples[0].text == "one\ntwo\nthree");
  }
}

TEST_CASE("label and domain string maps") {
  CHECK(to_string(Label::Machine) == "machine");
  CHECK(label_from_string("human") == Label::Human);
  CHECK(!label_from_string("robot").has_value());
  CHECK(domain_from_string("review") == Domain::Review);
  CHECK(!domain_from_string("poetry").has_value());
}
