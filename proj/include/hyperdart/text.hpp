#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Byte-level text helpers shared by the pipeline. All text is UTF-8; offsets
// are byte offsets that always fall on code point boundaries.
namespace hyperdart::text {

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Escapes backslash, LF, CR and TAB so a value fits on one line.
std::string escape_line(std::string_view raw);
// Inverse of escape_line; returns false on an unknown escape sequence.
bool unescape_line(std::string_view escaped, std::string& out);

char ascii_lower(char c);
std::string ascii_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
// Byte offset of the first case-insensitive occurrence, or npos.
std::size_t ifind(std::string_view haystack, std::string_view needle,
                  std::size_t from = 0);

bool is_ascii_alnum(char c);
bool is_ascii_upper(char c);
bool is_ascii_digit(char c);

// Decodes the code point starting at `pos` and its byte length. Invalid
// sequences decode as U+FFFD with length 1.
char32_t decode_utf8(std::string_view s, std::size_t pos, std::size_t& length);

// Unicode White_Space property.
bool is_unicode_space(char32_t cp);
// Length of the whitespace code point at pos, or 0.
std::size_t space_length_at(std::string_view s, std::size_t pos);

// Splits on runs of Unicode whitespace; no other normalisation.
std::vector<std::string_view> split_whitespace(std::string_view s);

std::string_view trim(std::string_view s);
std::string normalize_newlines(std::string_view s);

// Word scanner used by the detectors: a word is a maximal run of letters,
// digits, apostrophes (ASCII or U+2019) and inner hyphens.
struct WordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};
std::vector<WordSpan> scan_words(std::string_view s);
bool is_word_char_at(std::string_view s, std::size_t pos);

// True if `needle` occurs in `haystack` delimited by non-word characters.
bool contains_word_bounded(std::string_view haystack, std::string_view needle);

}  // namespace hyperdart::text
