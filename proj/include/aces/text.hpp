#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small UTF-8 / text helpers shared by the metrics and the generators.
// All offsets exposed by this module count Unicode scalar values, not bytes,
// so annotations survive multi-byte scripts.

namespace aces::text {

// Decodes UTF-8 into scalar values. Throws std::invalid_argument on
// malformed input (overlong forms, stray continuation bytes, surrogates).
std::u32string decode_utf8(std::string_view s);

std::string encode_utf8(std::u32string_view s);
std::string encode_utf8(char32_t c);

// Number of Unicode scalar values in s.
std::size_t codepoint_length(std::string_view s);

// Byte offset of the cp_index-th scalar value (cp_index may equal the
// codepoint length, yielding s.size()).
std::size_t byte_offset(std::string_view s, std::size_t cp_index);

// Substring by codepoint range [begin, end).
std::string substr_codepoints(std::string_view s, std::size_t begin, std::size_t end);

bool is_space(char32_t c);   // Unicode whitespace
bool is_punct(char32_t c);   // Unicode general category P (BMP coverage)
bool is_ascii_digit(char32_t c);

// Strips leading/trailing Unicode whitespace.
std::string trim(std::string_view s);

// Splits on runs of Unicode whitespace; no empty tokens.
std::vector<std::string> whitespace_tokens(std::string_view s);

// Tokenization used by the BLEU scorer: every punctuation character becomes
// its own token, remaining text splits on whitespace.
std::vector<std::string> bleu_tokens(std::string_view s);

// Removes every whitespace character (used by the chrF scorer).
std::string remove_whitespace(std::string_view s);

// Folds runs of whitespace into a single space and trims the ends. Also
// tidies space before sentence-final punctuation left behind by deletions.
std::string collapse_spaces(std::string_view s);

// First byte offset of needle in haystack, or nullopt.
std::optional<std::size_t> find_substring(std::string_view haystack, std::string_view needle);

// Replaces the first occurrence of `from` with `to`; returns nullopt if
// `from` does not occur.
std::optional<std::string> replace_first(std::string_view s, std::string_view from, std::string_view to);

bool starts_with_uppercase(std::string_view word);

// Capitalizes/lowercases the first scalar value (ASCII and Latin-1 only;
// other scripts are returned unchanged).
std::string match_capitalization(std::string_view pattern, std::string_view word);

}  // namespace aces::text
