#pragma once

#include <filesystem>

#include "sad/core.hpp"

namespace sad {

// JSONL dataset format: one object per line with required keys `id`, `text`,
// `label` ("human" | "machine" | "unknown") and `domain` ("news" | "code" |
// "review" | "other"); optional `meta` object of string values. UTF-8, LF.

// Loads and validates. Throws DatasetFormatError on unreadable files or bad
// JSON, UnknownLabelError / DuplicateIdError / EmptyTextError on bad samples.
Dataset load_jsonl(const std::filesystem::path& path);

void save_jsonl(const Dataset& dataset, const std::filesystem::path& path);

}  // namespace sad
