#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sad/errors.hpp"
#include "sad/mock_provider.hpp"
#include "sad/util.hpp"

using namespace sad;

namespace {

MockProvider& mock() {
  static MockProvider instance;
  return instance;
}

// Tokens drawn from lexicon words, corpus words and out-of-vocabulary junk.
std::string mixed_text(std::mt19937_64& rng, std::size_t n_tokens) {
  static const std::vector<std::string> pool = {
      "terrible", "awful",  "wonderful", "report", "the",    "committee", "budget",
      "zzkw",     "qqple",  "announced", "policy", "lovely", "grim",      "meeting.",
      "Nice,",    "PASTA",  "served",    "x9",     "sad",    "plain"};
  std::string out;
  for (std::size_t i = 0; i < n_tokens; ++i) {
    if (i > 0) out.push_back(' ');
    out += pool[uniform_index(rng, pool.size())];
  }
  return out;
}

}  // namespace

TEST_CASE("mock rewrite deletes lexicon words") {
  CHECK(mock().rewrite_objective("The terrible crash was awful news") == "The crash was news");
  // no lexicon hits: fixed point
  CHECK(mock().rewrite_objective("The committee met on Tuesday") == "The committee met on Tuesday");
  // punctuation attached to an emotion word still matches
  CHECK(mock().rewrite_objective("It was awful. Truly.") == "It was Truly.");
}

TEST_CASE("mock rewrite never returns empty") {
  // a text of nothing but emotion words has no neutral residue
  CHECK(mock().rewrite_objective("terrible awful") == "terrible awful");
}

TEST_CASE("mock sentiment intensity") {
  CHECK(mock().sentiment_intensity("report issued today", IntensitySource::Original).value == 0.0);

  // 10 tokens, one weight-0.9 lexicon word: 5 * 0.9 / 10 = 0.45
  std::string text = "the committee reviewed the annual budget with terrible delays overall";
  REQUIRE(tokenize_ws(text).size() == 10);
  CHECK(mock().sentiment_intensity(text, IntensitySource::Original).value ==
        doctest::Approx(0.45).epsilon(1e-12));

  // clamped at 1
  CHECK(mock().sentiment_intensity("terrible awful horrible", IntensitySource::Original).value ==
        1.0);
}

TEST_CASE("mock sentiment: zero without lexicon words, positive with one") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    std::size_t n = 3 + uniform_index(rng, 12);
    std::string neutral;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) neutral.push_back(' ');
      neutral += "tok" + std::to_string(uniform_index(rng, 50));
    }
    CHECK(mock().sentiment_intensity(neutral, IntensitySource::Original).value == 0.0);
    CHECK(mock().sentiment_intensity(neutral + " dreadful", IntensitySource::Original).value >
          0.0);
  }
}

TEST_CASE("mock rewrite never increases sentiment intensity") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 300; ++i) {
    std::string text = mixed_text(rng, 1 + uniform_index(rng, 40));
    double before = mock().sentiment_intensity(text, IntensitySource::Original).value;
    double after = mock()
                       .sentiment_intensity(mock().rewrite_objective(text),
                                            IntensitySource::Rewritten)
                       .value;
    CHECK(after <= before);
  }
}

TEST_CASE("mock paraphrase: identity, determinism, selection count") {
  std::string text;
  for (int i = 0; i < 10; ++i) {
    text += "the government announced a new policy on week " + std::to_string(i) + ".";
    if (i < 9) text += " ";
  }
  REQUIRE(split_sentences(text).size() == 10);

  CHECK(mock().paraphrase_sentences(text, 0.0, 7) == text);
  CHECK(mock().paraphrase_sentences(text, 0.1, 7) == mock().paraphrase_sentences(text, 0.1, 7));

  // ceil(0.1 * 10) = 1: exactly one sentence differs
  auto before = split_sentences(text);
  auto after = split_sentences(mock().paraphrase_sentences(text, 0.1, 7));
  REQUIRE(after.size() == before.size());
  int changed = 0;
  for (std::size_t i = 0; i < before.size(); ++i) changed += before[i] != after[i] ? 1 : 0;
  CHECK(changed == 1);

  // fraction 1 touches every sentence
  auto all = split_sentences(mock().paraphrase_sentences(text, 1.0, 7));
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(all[i] != before[i]);
}

TEST_CASE("mock paraphrase substitutes synonyms and keeps capitalization") {
  CHECK(mock().paraphrase_sentences("The government announced a policy.", 1.0, 1) ==
        "The administration proclaimed a directive.");
  // no synonym hit: leading tokens swap, terminator stays put
  CHECK(mock().paraphrase_sentences("alpha beta gamma.", 1.0, 1) == "beta alpha gamma.");
}

TEST_CASE("mock token scores on a tiny corpus are exact") {
  MockData data;
  data.corpus = "a a a\n";
  data.lexicon = MockData::builtin().lexicon;
  data.synonyms = MockData::builtin().synonyms;
  MockProvider tiny(std::move(data));

  // vocab {a, <unk>}: p(a|<s>) = 2/3, p(a|a) = 3/4
  auto scores = tiny.token_scores("a a");
  REQUIRE(scores.size() == 2);
  CHECK(scores[0].logprob == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-12));
  CHECK(scores[0].rank == 1);
  CHECK(scores[0].entropy ==
        doctest::Approx(-(2.0 / 3.0) * std::log(2.0 / 3.0) - (1.0 / 3.0) * std::log(1.0 / 3.0))
            .epsilon(1e-12));
  CHECK(scores[1].logprob == doctest::Approx(std::log(3.0 / 4.0)).epsilon(1e-12));
  CHECK(scores[1].rank == 1);
  CHECK(scores[1].entropy == doctest::Approx(0.5623351446188083).epsilon(1e-9));
  CHECK(!scores[0].rank_capped);
  CHECK(!scores[0].entropy_estimated);

  // out-of-vocabulary token maps to <unk>: rank 2 behind "a"
  auto unk = tiny.token_scores("b");
  CHECK(unk[0].logprob == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-12));
  CHECK(unk[0].rank == 2);

  CHECK_THROWS_AS(tiny.token_scores(""), EmptyTokenization);
  CHECK_THROWS_AS(tiny.token_scores("  \t "), EmptyTokenization);
}

TEST_CASE("mock token scores match brute-force enumeration") {
  oracles::BruteBigram brute(MockData::builtin().corpus);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 25; ++i) {
    std::string text = mixed_text(rng, 50);
    auto got = mock().token_scores(text);
    auto expected = brute.score_text(text);
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      CHECK(got[k].logprob == doctest::Approx(expected[k].logprob).epsilon(1e-9));
      CHECK(got[k].rank == expected[k].rank);
      CHECK(got[k].entropy == doctest::Approx(expected[k].entropy).epsilon(1e-9));
      CHECK(got[k].logprob <= 0.0);
      CHECK(got[k].entropy >= 0.0);
      CHECK(got[k].rank >= 1);
    }
  }
}

TEST_CASE("mock operations are pure functions of their inputs") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    std::string text = mixed_text(rng, 1 + uniform_index(rng, 30));
    CHECK(mock().rewrite_objective(text) == mock().rewrite_objective(text));
    CHECK(mock().sentiment_intensity(text, IntensitySource::Original).value ==
          mock().sentiment_intensity(text, IntensitySource::Original).value);
    CHECK(mock().token_scores(text) == mock().token_scores(text));
    CHECK(mock().paraphrase_sentences(text, 0.3, i) == mock().paraphrase_sentences(text, 0.3, i));
  }
}

TEST_CASE("builtin data sanity") {
  const MockData& data = MockData::builtin();
  CHECK(data.lexicon.size() > 100);
  CHECK(data.lexicon.at("terrible") == 0.9);
  CHECK(data.lexicon.at("awful") == 0.9);
  CHECK(data.synonyms.at("announced") == "proclaimed");
  for (const auto& [word, weight] : data.lexicon) {
    CHECK(weight > 0.0);
    CHECK(weight <= 1.0);
    CHECK(word == normalize_token(word));
  }
  // synonym sources fire only if templates actually contain them; spot check
  CHECK(data.corpus.find("announced") != std::string::npos);
  CHECK(data.corpus.find("proclaimed") == std::string::npos);
}
