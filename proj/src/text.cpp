#include "hyperdart/text.hpp"

#include <fmt/format.h>

namespace hyperdart::text {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value) { return fmt::format("{:016x}", value); }

std::string escape_line(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

bool unescape_line(std::string_view escaped, std::string& out) {
  out.clear();
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    char c = escaped[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    if (++i == escaped.size()) return false;
    switch (escaped[i]) {
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case 't': out += '\t'; break;
      default: return false;
    }
  }
  return true;
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_lower(c);
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ascii_lower(a[i]) != ascii_lower(b[i])) return false;
  }
  return true;
}

std::size_t ifind(std::string_view haystack, std::string_view needle,
                  std::size_t from) {
  if (needle.empty()) return from <= haystack.size() ? from : std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    if (iequals(haystack.substr(i, needle.size()), needle)) return i;
  }
  return std::string_view::npos;
}

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}
bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

char32_t decode_utf8(std::string_view s, std::size_t pos, std::size_t& length) {
  auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  unsigned char lead = byte(pos);
  if (lead < 0x80) {
    length = 1;
    return lead;
  }
  std::size_t need = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    need = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    need = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    need = 3;
    cp = lead & 0x07;
  } else {
    length = 1;
    return 0xFFFD;
  }
  if (pos + need >= s.size()) {
    length = 1;
    return 0xFFFD;
  }
  for (std::size_t k = 1; k <= need; ++k) {
    unsigned char cont = byte(pos + k);
    if ((cont & 0xC0) != 0x80) {
      length = 1;
      return 0xFFFD;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  length = need + 1;
  return cp;
}

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

std::size_t space_length_at(std::string_view s, std::size_t pos) {
  std::size_t len = 0;
  char32_t cp = decode_utf8(s, pos, len);
  return is_unicode_space(cp) ? len : 0;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  std::size_t start = std::string_view::npos;
  while (i < s.size()) {
    std::size_t len = space_length_at(s, i);
    if (len > 0) {
      if (start != std::string_view::npos) {
        tokens.push_back(s.substr(start, i - start));
        start = std::string_view::npos;
      }
      i += len;
    } else {
      if (start == std::string_view::npos) start = i;
      std::size_t cp_len = 1;
      decode_utf8(s, i, cp_len);
      i += cp_len;
    }
  }
  if (start != std::string_view::npos) tokens.push_back(s.substr(start));
  return tokens;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t' || s[b] == '\n' || s[b] == '\r')) ++b;
  std::size_t e = s.size();
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\n' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

std::string normalize_newlines(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\r') {
      out += '\n';
      if (i + 1 < s.size() && s[i + 1] == '\n') ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

namespace {

bool is_letter_cp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9');
  }
  if (is_unicode_space(cp)) return false;
  if (cp >= 0x80 && cp <= 0xBF) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  return cp != 0xFFFD;
}

bool is_joiner_cp(char32_t cp) { return cp == '\'' || cp == 0x2019 || cp == '-'; }

}  // namespace

bool is_word_char_at(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return false;
  std::size_t len = 0;
  return is_letter_cp(decode_utf8(s, pos, len));
}

std::vector<WordSpan> scan_words(std::string_view s) {
  std::vector<WordSpan> words;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t len = 0;
    char32_t cp = decode_utf8(s, i, len);
    if (!is_letter_cp(cp)) {
      i += len;
      continue;
    }
    WordSpan w{i, i + len};
    std::size_t j = i + len;
    while (j < s.size()) {
      std::size_t l = 0;
      char32_t c = decode_utf8(s, j, l);
      if (is_letter_cp(c)) {
        j += l;
        w.end = j;
      } else if (is_joiner_cp(c) && is_word_char_at(s, j + l)) {
        j += l;
      } else {
        break;
      }
    }
    words.push_back(w);
    i = w.end;
  }
  return words;
}

bool contains_word_bounded(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return false;
  std::size_t pos = haystack.find(needle);
  while (pos != std::string_view::npos) {
    bool left_ok = pos == 0 || !is_word_char_at(haystack, pos - 1) ||
                   !is_word_char_at(needle, 0);
    // Step back over a multi-byte code point for the left boundary check.
    if (pos > 0 && static_cast<unsigned char>(haystack[pos - 1]) >= 0x80) {
      std::size_t b = pos - 1;
      while (b > 0 && (static_cast<unsigned char>(haystack[b]) & 0xC0) == 0x80) --b;
      left_ok = !is_word_char_at(haystack, b) || !is_word_char_at(needle, 0);
    }
    std::size_t end = pos + needle.size();
    bool right_ok = end >= haystack.size() || !is_word_char_at(haystack, end) ||
                    !is_word_char_at(needle, needle.size() - 1);
    if (left_ok && right_ok) return true;
    pos = haystack.find(needle, pos + 1);
  }
  return false;
}

}  // namespace hyperdart::text
