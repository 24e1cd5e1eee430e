#ifndef CORPUSLENS_TEXT_HPP
#define CORPUSLENS_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace corpuslens::text {

// Lowercases ASCII letters, leaves other bytes untouched.
std::string to_lower(std::string_view s);

// True if the codepoint counts as part of a word token: ASCII alphanumerics,
// plus non-ASCII letters. Unicode punctuation/symbol blocks (general
// punctuation, dashes, CJK punctuation, fullwidth forms, ...) separate tokens.
bool is_word_codepoint(char32_t cp);

// Normalizes for matching: lowercase, every non-word codepoint becomes a
// separator, whitespace collapsed. "Protected Bike-Lane!" -> {protected, bike, lane}.
std::vector<std::string> tokenize(std::string_view s);

// tokenize() then re-join with single spaces; handy for phrase containment.
std::string normalize_joined(std::string_view s);

// True if `phrase_tokens` occurs as a contiguous subsequence of `tokens`.
bool contains_phrase(const std::vector<std::string>& tokens,
                     const std::vector<std::string>& phrase_tokens);

// Splits on ASCII whitespace, no normalization.
std::vector<std::string> split_whitespace(std::string_view s);

// Number of UTF-8 codepoints (continuation bytes not counted).
std::size_t utf8_length(std::string_view s);

}  // namespace corpuslens::text

#endif
