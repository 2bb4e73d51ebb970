#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hcdeval::text {

// Recorded in run manifests; bump when segmentation rules change.
inline constexpr std::string_view kTokenizerId = "hcdeval-words-v1";

struct TokenizedText {
  std::string record_id;
  std::vector<std::string> tokens;  // lowercased word tokens, punctuation removed
  std::vector<std::pair<std::size_t, std::size_t>> sentence_spans;  // [begin, end) into tokens
};

/// Word segmentation over UTF-8 text. Letters, digits, and any non-ASCII
/// code point outside the punctuation and symbol blocks form words;
/// apostrophes and hyphens between word characters (and '.' or ',' between
/// digits) stay inside the word. Tokens are lowercased; standalone
/// punctuation is dropped but '.', '!', '?' and U+2026 close sentences.
/// Sentence spans partition the token list.
TokenizedText tokenize(std::string_view text, std::string record_id = {});

/// Simple case folding for ASCII, Latin-1, Latin Extended-A, Greek and
/// Cyrillic; other code points pass through unchanged.
std::string to_lower(std::string_view utf8);

/// UTF-8 to code points; malformed bytes decode to U+FFFD one byte at a time.
std::u32string decode_utf8(std::string_view utf8);
std::string encode_utf8(std::u32string_view cps);

/// Single code point version of to_lower().
char32_t fold_case(char32_t c) noexcept;

/// Number of Unicode code points in a UTF-8 string (invalid bytes count 1).
std::size_t codepoint_count(std::string_view utf8);

}  // namespace hcdeval::text
