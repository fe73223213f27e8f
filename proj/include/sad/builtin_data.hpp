#pragma once

#include <string_view>

// Fixture data embedded from data/ at build time.
namespace sad::data {

std::string_view emotion_lexicon_tsv();
std::string_view synonyms_tsv();
std::string_view templates_news();
std::string_view templates_code();
std::string_view templates_review();

}  // namespace sad::data
