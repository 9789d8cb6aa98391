#include "hyperdart/constrictor.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

#include <fmt/format.h>

#include "hyperdart/error.hpp"
#include "hyperdart/text.hpp"

namespace hyperdart {

const std::vector<TimeBucket>& time_buckets() {
  static const std::vector<TimeBucket> buckets = {
      {4, 9, "early morning", "in the early morning"},
      {9, 12, "morning", "in the morning"},
      {12, 13, "midday", "at midday"},
      {13, 17, "afternoon", "in the afternoon"},
      {17, 21, "evening", "in the evening"},
      {21, 28, "night", "at night"},  // 21:00 through 03:59
  };
  return buckets;
}

const TimeBucket& bucket_for_hour(int hour) {
  int h = ((hour % 24) + 24) % 24;
  if (h < 4) h += 24;
  for (const auto& bucket : time_buckets()) {
    if (h >= bucket.from_hour && h < bucket.to_hour) return bucket;
  }
  return time_buckets().back();
}

namespace {

using text::WordSpan;

constexpr std::array<std::string_view, 12> kMonths = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

// Common words that may open a sentence in front of a genuine name.
const std::set<std::string, std::less<>>& sentence_openers() {
  static const std::set<std::string, std::less<>> words = {
      "a",        "after",   "also",      "an",        "and",     "another", "as",
      "at",       "before",  "both",      "but",       "by",      "despite", "during",
      "each",     "every",   "for",       "from",      "furthermore", "generally",
      "he",       "her",     "here",      "his",       "how",     "however", "i",
      "if",       "in",      "instead",   "it",        "its",     "left",    "let's",
      "many",     "moreover", "most",     "my",        "no",      "not",     "now",
      "of",       "on",      "one",       "or",        "our",     "over",    "she",
      "since",    "so",      "some",      "such",      "that",    "the",     "their",
      "then",     "there",   "these",     "they",      "this",    "those",   "thus",
      "to",       "today",   "under",     "unfortunately", "we",  "what",    "when",
      "where",    "whether", "which",     "while",     "who",     "why",     "with",
      "yet",      "you",     "your",      "additionally", "dear",  "oh",     "o"};
  return words;
}

bool is_lower_ascii_letter(char c) { return c >= 'a' && c <= 'z'; }

std::string_view word_text(std::string_view s, const WordSpan& w) {
  return s.substr(w.begin, w.end - w.begin);
}

bool gap_has_terminal(std::string_view gap) {
  return gap.find_first_of(".!?") != std::string_view::npos;
}

bool gap_is_space(std::string_view gap) {
  if (gap.empty()) return false;
  std::size_t i = 0;
  while (i < gap.size()) {
    std::size_t len = text::space_length_at(gap, i);
    if (len == 0) return false;
    i += len;
  }
  return true;
}

struct Sentences {
  std::vector<WordSpan> words;
  std::vector<bool> starts;     // per word
  std::vector<std::size_t> id;  // sentence id per word
};

Sentences analyse(std::string_view s) {
  Sentences out;
  out.words = text::scan_words(s);
  std::size_t sentence = 0;
  for (std::size_t i = 0; i < out.words.size(); ++i) {
    bool start = i == 0;
    if (i > 0) {
      std::size_t prev_end = out.words[i - 1].end;
      std::string_view gap = s.substr(prev_end, out.words[i].begin - prev_end);
      // "7:00" and "4.5" do not end sentences.
      bool numeric_join = (gap == ":" || gap == ".") &&
                          text::is_ascii_digit(s[prev_end - 1]) &&
                          text::is_ascii_digit(s[out.words[i].begin]);
      start = gap_has_terminal(gap) && !numeric_join;
    }
    if (start && i > 0) ++sentence;
    out.starts.push_back(start);
    out.id.push_back(sentence);
  }
  return out;
}

// Sentence id of the word containing or following a byte offset.
std::size_t sentence_of(const Sentences& sent, std::size_t offset) {
  for (std::size_t i = 0; i < sent.words.size(); ++i) {
    if (sent.words[i].end > offset) return sent.id[i];
  }
  return sent.id.empty() ? 0 : sent.id.back();
}

bool is_sentence_start_at(const Sentences& sent, std::size_t offset) {
  for (std::size_t i = 0; i < sent.words.size(); ++i) {
    if (sent.words[i].begin == offset) return sent.starts[i];
  }
  return false;
}

// ---------------------------------------------------------------- TIME

struct TimeMatch {
  Span span;
  int hour = 0;
  bool is_date = false;
};

// Parses an am/pm marker at pos ("am", "p.m.", "P. M."). Returns its length.
std::size_t parse_meridiem(std::string_view s, std::size_t pos, bool& pm) {
  std::size_t i = pos;
  if (i >= s.size()) return 0;
  char c = text::ascii_lower(s[i]);
  if (c != 'a' && c != 'p') return 0;
  pm = c == 'p';
  ++i;
  if (i < s.size() && s[i] == '.') ++i;
  if (i < s.size() && s[i] == ' ') ++i;
  if (i >= s.size() || text::ascii_lower(s[i]) != 'm') return 0;
  ++i;
  if (i < s.size() && s[i] == '.') {
    // A closing period followed by a new sentence is sentence punctuation.
    std::size_t j = i + 1;
    bool sentence_end = j >= s.size() ||
                        (std::isspace(static_cast<unsigned char>(s[j])) &&
                         (j + 1 >= s.size() || text::is_ascii_upper(s[j + 1]) || s[j] == '\n'));
    if (!sentence_end) ++i;
  }
  if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) return 0;
  return i - pos;
}

std::optional<TimeMatch> parse_clock(std::string_view s, std::size_t pos) {
  if (pos > 0 && (text::is_ascii_alnum(s[pos - 1]) || s[pos - 1] == ':')) return std::nullopt;
  std::size_t i = pos;
  int hour = 0;
  std::size_t digits = 0;
  while (i < s.size() && text::is_ascii_digit(s[i]) && digits < 2) {
    hour = hour * 10 + (s[i] - '0');
    ++i;
    ++digits;
  }
  if (digits == 0 || (i < s.size() && text::is_ascii_digit(s[i]))) return std::nullopt;
  bool minutes = false;
  if (i + 2 < s.size() && s[i] == ':' && text::is_ascii_digit(s[i + 1]) &&
      text::is_ascii_digit(s[i + 2])) {
    int mm = (s[i + 1] - '0') * 10 + (s[i + 2] - '0');
    if (mm > 59) return std::nullopt;
    if (i + 3 < s.size() && text::is_ascii_digit(s[i + 3])) return std::nullopt;
    i += 3;
    minutes = true;
  }
  std::size_t j = i;
  if (j < s.size() && s[j] == ' ') ++j;
  bool pm = false;
  std::size_t mlen = parse_meridiem(s, j, pm);
  if (mlen == 0 && j != i) {
    j = i;
    mlen = parse_meridiem(s, j, pm);
  }
  if (mlen > 0) {
    if (hour < 1 || hour > 12) return std::nullopt;
    if (pm && hour != 12) hour += 12;
    if (!pm && hour == 12) hour = 0;
    return TimeMatch{{pos, j + mlen}, hour, false};
  }
  if (!minutes || hour > 23) return std::nullopt;
  if (i < s.size() && text::is_word_char_at(s, i)) return std::nullopt;
  return TimeMatch{{pos, i}, hour, false};
}

bool is_month(std::string_view word) {
  std::string lower = text::ascii_lower(word);
  return std::find(kMonths.begin(), kMonths.end(), lower) != kMonths.end() &&
         text::is_ascii_upper(word.front());
}

// Day of month with optional ordinal suffix: "3", "1st", "22nd".
bool is_day(std::string_view word) {
  std::size_t i = 0;
  int value = 0;
  while (i < word.size() && text::is_ascii_digit(word[i]) && i < 2) value = value * 10 + (word[i++] - '0');
  if (i == 0 || value < 1 || value > 31) return false;
  std::string rest = text::ascii_lower(word.substr(i));
  return rest.empty() || rest == "st" || rest == "nd" || rest == "rd" || rest == "th";
}

std::vector<TimeMatch> find_dates(std::string_view s, const std::vector<WordSpan>& words) {
  std::vector<TimeMatch> out;
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    std::string_view a = word_text(s, words[i]);
    std::string_view b = word_text(s, words[i + 1]);
    std::string_view gap = s.substr(words[i].end, words[i + 1].begin - words[i].end);
    if (gap != " ") continue;
    if ((is_day(a) && is_month(b)) || (is_month(a) && is_day(b))) {
      out.push_back({{words[i].begin, words[i + 1].end}, 0, true});
      ++i;
    }
  }
  return out;
}

bool starts_with_word(std::string_view s, std::size_t pos, std::string_view word) {
  if (pos + word.size() > s.size()) return false;
  if (!text::iequals(s.substr(pos, word.size()), word)) return false;
  return pos + word.size() == s.size() || !text::is_word_char_at(s, pos + word.size());
}

std::size_t skip_spaces(std::string_view s, std::size_t pos) {
  std::size_t len = 0;
  while (pos < s.size() && (len = text::space_length_at(s, pos)) > 0) pos += len;
  return pos;
}

std::vector<DetailCandidate> detect_times(std::string_view s,
                                          const std::vector<WordSpan>& words) {
  std::vector<TimeMatch> clocks;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!text::is_ascii_digit(s[i])) continue;
    if (auto m = parse_clock(s, i)) {
      clocks.push_back(*m);
      i = m->span.end - 1;
    }
  }

  std::vector<DetailCandidate> out;
  for (std::size_t c = 0; c < clocks.size(); ++c) {
    Span span = clocks[c].span;
    std::string category = "time";
    // Join alternatives ("7:00 or 10:00am") and ranges ("9 to 11 am").
    while (c + 1 < clocks.size()) {
      std::size_t p = skip_spaces(s, span.end);
      std::size_t after = 0;
      std::string joined;
      for (std::string_view joiner : {"or", "to", "and", "until"}) {
        if (starts_with_word(s, p, joiner)) {
          after = skip_spaces(s, p + joiner.size());
          joined = joiner;
          break;
        }
      }
      if (joined.empty() && p < s.size() && s[p] == '-') {
        after = skip_spaces(s, p + 1);
        joined = "-";
      }
      if (joined.empty() || after != clocks[c + 1].span.begin) break;
      span.end = clocks[c + 1].span.end;
      category = joined == "or" ? "time choice" : "time range";
      ++c;
    }
    // Trailing qualifier clause up to the clause end.
    std::size_t q = span.end;
    if (q < s.size() && s[q] == ',') ++q;
    q = skip_spaces(s, q);
    bool qualified = false;
    for (std::string_view cue : {"depending on", "weather permitting"}) {
      if (q + cue.size() <= s.size() && text::iequals(s.substr(q, cue.size()), cue) &&
          q > span.end) {
        qualified = true;
        break;
      }
    }
    if (qualified) {
      std::size_t end = s.find_first_of(".,;:!?\n", q);
      if (end == std::string_view::npos) end = s.size();
      while (end > q && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
      span.end = end;
      category = "time choice";
    }
    DetailCandidate cand;
    cand.span = span;
    cand.category = category;
    cand.detector = DetectorKind::Time;
    out.push_back(std::move(cand));
  }
  for (const TimeMatch& d : find_dates(s, words)) {
    DetailCandidate cand;
    cand.span = d.span;
    cand.category = "date";
    cand.detector = DetectorKind::Time;
    out.push_back(std::move(cand));
  }
  return out;
}

int first_hour(std::string_view surface) {
  for (std::size_t i = 0; i < surface.size(); ++i) {
    if (text::is_ascii_digit(surface[i])) {
      if (auto m = parse_clock(surface, i)) return m->hour;
    }
  }
  return 12;
}

// ------------------------------------------------------------- NUMERIC

std::vector<DetailCandidate> detect_numbers(std::string_view s,
                                            const std::vector<WordSpan>& words) {
  std::vector<DetailCandidate> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string_view w = word_text(s, words[i]);
    if (!text::is_ascii_digit(w.front())) continue;
    Span span{words[i].begin, words[i].end};
    std::size_t digits = 0;
    while (digits < w.size() && text::is_ascii_digit(w[digits])) ++digits;
    std::string_view suffix = w.substr(digits);
    std::string category;
    if (suffix.empty()) {
      // Decimal "4.5" is scanned as two words.
      if (span.end + 1 < s.size() && s[span.end] == '.' && i + 1 < words.size() &&
          words[i + 1].begin == span.end + 1 && text::is_ascii_digit(s[span.end + 1])) {
        span.end = words[i + 1].end;
        ++i;
        category = "number";
      } else if (digits == 4) {
        int year = std::stoi(std::string(w));
        category = (year >= 1000 && year <= 2099) ? "year" : "count";
      } else {
        category = std::stoull(std::string(w.substr(0, std::min<std::size_t>(digits, 18)))) >= 2
                       ? "count"
                       : "number";
      }
      if (span.end < s.size() && s[span.end] == '%') {
        ++span.end;
        category = "percentage";
      }
    } else if (suffix == "s" && digits == 4 && w[3] == '0') {
      category = "decade";
    } else {
      // Ordinals and mixed alphanumerics are left in place.
      continue;
    }
    DetailCandidate cand;
    cand.span = span;
    cand.category = category;
    cand.detector = DetectorKind::Numeric;
    out.push_back(std::move(cand));
  }
  return out;
}

// --------------------------------------------------------- PROPER_NOUN

bool is_capitalized(std::string_view w) {
  if (w.empty() || !text::is_ascii_upper(w.front())) return false;
  return !(w.size() == 1 && (w == "I" || w == "A" || w == "O"));
}

bool is_connector(std::string_view gap, std::string_view next_word) {
  (void)next_word;
  return gap == " & " || gap == " of " || gap == " de " || gap == " von " || gap == " van ";
}

std::size_t strip_possessive(std::string_view s, std::size_t begin, std::size_t end) {
  std::string_view w = s.substr(begin, end - begin);
  if (w.size() > 2 && (w.ends_with("'s") || w.ends_with("'S"))) return end - 2;
  if (w.size() > 4 && w.ends_with("\xE2\x80\x99s")) return end - 4;
  return end;
}

std::vector<DetailCandidate> detect_proper_nouns(std::string_view s, const Sentences& sent) {
  std::vector<Span> runs;
  const auto& words = sent.words;
  std::size_t i = 0;
  while (i < words.size()) {
    if (!is_capitalized(word_text(s, words[i]))) {
      ++i;
      continue;
    }
    std::size_t first = i;
    std::size_t last = i;
    while (last + 1 < words.size()) {
      std::string_view gap = s.substr(words[last].end, words[last + 1].begin - words[last].end);
      std::string_view next = word_text(s, words[last + 1]);
      if ((gap == " " || gap == "\n") && is_capitalized(next) && !sent.starts[last + 1]) {
        ++last;
        continue;
      }
      // "Bank & Trust", "Bank of England"
      if (last + 2 < words.size() && (gap == " & " || gap == " ")) {
        std::string_view mid = next;
        std::string_view gap2 =
            s.substr(words[last + 1].end, words[last + 2].begin - words[last + 1].end);
        if (gap == " " && (mid == "of" || mid == "de" || mid == "von" || mid == "van") &&
            gap2 == " " && is_capitalized(word_text(s, words[last + 2]))) {
          last += 2;
          continue;
        }
      }
      if (is_connector(gap, next) && gap == " & " && is_capitalized(next)) {
        ++last;
        continue;
      }
      break;
    }
    i = last + 1;
    if (sent.starts[first]) {
      if (first == last) continue;
      std::string lower = text::ascii_lower(word_text(s, words[first]));
      if (sentence_openers().count(lower)) {
        ++first;
        if (first == last && !is_capitalized(word_text(s, words[first]))) continue;
      }
    }
    std::size_t begin = words[first].begin;
    std::size_t end = strip_possessive(s, begin, words[last].end);
    if (end > begin) runs.push_back({begin, end});
  }

  // Every other word-bounded occurrence of a detected name is a name too,
  // including ones that open a sentence.
  std::set<std::string> surfaces;
  for (const Span& r : runs) surfaces.insert(std::string(s.substr(r.begin, r.size())));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Span& r : runs) seen.insert({r.begin, r.end});
  for (const std::string& name : surfaces) {
    std::size_t pos = s.find(name);
    while (pos != std::string_view::npos) {
      std::size_t end = pos + name.size();
      bool left = pos == 0 || !text::is_word_char_at(s, pos - 1);
      if (pos > 0 && static_cast<unsigned char>(s[pos - 1]) >= 0x80) {
        std::size_t b = pos - 1;
        while (b > 0 && (static_cast<unsigned char>(s[b]) & 0xC0) == 0x80) --b;
        left = !text::is_word_char_at(s, b);
      }
      bool right = end >= s.size() || !text::is_word_char_at(s, end);
      if (left && right && !seen.count({pos, end})) {
        runs.push_back({pos, end});
        seen.insert({pos, end});
      }
      pos = s.find(name, pos + 1);
    }
  }

  std::vector<DetailCandidate> out;
  for (const Span& r : runs) {
    DetailCandidate cand;
    cand.span = r;
    cand.category = "name";
    cand.detector = DetectorKind::ProperNoun;
    out.push_back(std::move(cand));
  }
  return out;
}

// ------------------------------------------------------------- LEXICON

std::vector<DetailCandidate> detect_lexicon(std::string_view s, const std::vector<WordSpan>& words,
                                            const HypernymLexicon& lexicon) {
  std::vector<DetailCandidate> out;
  for (const WordSpan& w : words) {
    std::size_t length = 0;
    const LexiconEntry* entry = lexicon.longest_match(s, w.begin, length);
    if (!entry) continue;
    DetailCandidate cand;
    cand.span = {w.begin, w.begin + length};
    cand.category = entry->category;
    cand.detector = DetectorKind::Lexicon;
    cand.entry = *entry;
    out.push_back(std::move(cand));
  }
  return out;
}

int priority(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::Lexicon: return 3;
    case DetectorKind::Time: return 2;
    case DetectorKind::Numeric: return 1;
    case DetectorKind::ProperNoun: return 0;
  }
  return 0;
}

// Overlapping candidates collapse into one covering their union; the
// highest-priority member (leftmost on ties) supplies kind and category.
std::vector<DetailCandidate> merge_overlaps(std::vector<DetailCandidate> all) {
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
    return a.span.end > b.span.end;
  });
  std::vector<DetailCandidate> out;
  for (auto& cand : all) {
    if (!out.empty() && cand.span.begin < out.back().span.end) {
      DetailCandidate& group = out.back();
      Span merged{group.span.begin, std::max(group.span.end, cand.span.end)};
      if (priority(cand.detector) > priority(group.detector)) {
        Span keep = merged;
        group = std::move(cand);
        group.span = keep;
      } else {
        group.span = merged;
      }
      continue;
    }
    out.push_back(std::move(cand));
  }
  return out;
}

std::string indefinite_article_for(std::string_view word) {
  char c = word.empty() ? 'x' : text::ascii_lower(word.front());
  return (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') ? "an" : "a";
}

bool has_article(std::string_view phrase) {
  return phrase.starts_with("a ") || phrase.starts_with("an ") || phrase.starts_with("the ");
}

std::string with_indefinite(std::string_view phrase) {
  if (phrase.starts_with("a ") || phrase.starts_with("an ")) return std::string(phrase);
  if (phrase.starts_with("the ")) phrase.remove_prefix(4);
  return indefinite_article_for(phrase) + " " + std::string(phrase);
}

std::string capitalize_first(std::string s) {
  if (!s.empty() && is_lower_ascii_letter(s.front())) s.front() = static_cast<char>(s.front() - 'a' + 'A');
  return s;
}

struct PendingEdit {
  Span source;
  std::string replacement;
  std::size_t detail;
  EditRole role;
};

// The word directly preceding `pos` with only whitespace in between.
std::optional<WordSpan> previous_word(const std::vector<WordSpan>& words, std::string_view s,
                                      std::size_t pos) {
  for (std::size_t i = words.size(); i-- > 0;) {
    if (words[i].end <= pos) {
      if (gap_is_space(s.substr(words[i].end, pos - words[i].end))) return words[i];
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::size_t> sentence_starts(std::string_view paragraph) {
  Sentences sent = analyse(paragraph);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sent.words.size(); ++i) {
    if (sent.starts[i]) out.push_back(sent.words[i].begin);
  }
  return out;
}

std::vector<DetailCandidate> detect_details(std::string_view paragraph,
                                            const HypernymLexicon& lexicon) {
  Sentences sent = analyse(paragraph);
  std::vector<DetailCandidate> all = detect_lexicon(paragraph, sent.words, lexicon);
  for (auto& c : detect_times(paragraph, sent.words)) all.push_back(std::move(c));
  for (auto& c : detect_numbers(paragraph, sent.words)) all.push_back(std::move(c));
  for (auto& c : detect_proper_nouns(paragraph, sent)) all.push_back(std::move(c));
  std::vector<DetailCandidate> merged = merge_overlaps(std::move(all));

  // "<generalised phrase> named <Name>": the name refers to the phrase.
  for (std::size_t i = 1; i < merged.size(); ++i) {
    DetailCandidate& c = merged[i];
    const DetailCandidate& prev = merged[i - 1];
    if (prev.detector != DetectorKind::Lexicon || c.detector == DetectorKind::Lexicon) continue;
    std::string_view gap = paragraph.substr(prev.span.end, c.span.begin - prev.span.end);
    std::size_t b = skip_spaces(gap, 0);
    if (b == 0) continue;
    std::string_view rest = gap.substr(b);
    for (std::string_view cue : {"named", "called"}) {
      if (rest.size() > cue.size() && rest.substr(0, cue.size()) == cue &&
          gap_is_space(rest.substr(cue.size()))) {
        c.referent = with_indefinite(prev.entry->hypernym);
        c.cue_begin = prev.span.end;
        c.category = "name";
      }
    }
  }
  return merged;
}

Generalization generalize(const DetailCandidate& candidate, std::string_view paragraph,
                          const HypernymLexicon& lexicon) {
  std::string_view surface = paragraph.substr(candidate.span.begin, candidate.span.size());
  if (candidate.referent) return {*candidate.referent, "name"};
  switch (candidate.detector) {
    case DetectorKind::Lexicon:
      if (candidate.entry) return {candidate.entry->hypernym, candidate.entry->category};
      break;
    case DetectorKind::Time:
      if (candidate.category == "date") return {"a certain day", "date"};
      return {std::string(bucket_for_hour(first_hour(surface)).phrase), candidate.category};
    case DetectorKind::Numeric: {
      if (candidate.category == "year") {
        std::string decade(surface.substr(0, 3));
        return {"the " + decade + "0s", "year"};
      }
      if (candidate.category == "decade") return {"a past decade", "decade"};
      if (candidate.category == "count") return {"several", "count"};
      if (candidate.category == "percentage") return {"a share", "percentage"};
      return {std::string(HypernymLexicon::fallback(DetectorKind::Numeric)), "number"};
    }
    case DetectorKind::ProperNoun:
      if (const LexiconEntry* entry = lexicon.find(surface)) return {entry->hypernym, entry->category};
      break;
  }
  return {std::string(HypernymLexicon::fallback(candidate.detector)), candidate.category};
}

Dart build_dart(std::string_view paragraph, const HypernymLexicon& lexicon,
                const ConstrictorOptions& options) {
  if (text::trim(paragraph).empty() || text::split_whitespace(paragraph).empty()) {
    throw DegenerateInput("paragraph is empty or whitespace-only");
  }
  const std::string_view s = paragraph;
  Sentences sent = analyse(s);
  std::vector<DetailCandidate> cands = detect_details(s, lexicon);
  if (!options.absorb_appositives) {
    for (auto& c : cands) c.referent.reset();
  }

  // Sentences turned into generic events by an absorbed appositive name,
  // mapped to the detail that owns the rewrite.
  std::map<std::size_t, std::size_t> absorbing;
  if (options.absorb_appositives) {
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (cands[i].referent) absorbing.emplace(sentence_of(sent, cands[i].span.begin), i);
    }
  }

  std::vector<PendingEdit> pending;
  std::vector<Generalization> generalized;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const DetailCandidate& c = cands[i];
    Generalization g = generalize(c, s, lexicon);
    generalized.push_back(g);
    bool in_absorbing = absorbing.count(sentence_of(sent, c.span.begin)) > 0;

    if (c.referent && options.absorb_appositives) {
      pending.push_back({{c.cue_begin, c.span.end}, "", i, EditRole::Slot});
      continue;
    }
    auto prev = previous_word(sent.words, s, c.span.begin);
    std::string_view prev_text = prev ? word_text(s, *prev) : std::string_view{};
    bool is_clock = c.detector == DetectorKind::Time && c.category != "date";

    if (is_clock && prev) {
      std::string lower = text::ascii_lower(prev_text);
      if (in_absorbing && (lower == "at" || lower == "on" || lower == "by" || lower == "around")) {
        // Generic events do not carry their exact time.
        std::size_t from = prev->begin;
        while (from > 0 && text::space_length_at(s, from - 1) > 0) --from;
        pending.push_back({{from, c.span.end}, "", i, EditRole::Slot});
        continue;
      }
      if (lower == "at") {
        std::string replacement(bucket_for_hour(first_hour(s.substr(c.span.begin, c.span.size())))
                                    .prepositional);
        if (is_sentence_start_at(sent, prev->begin) || text::is_ascii_upper(prev_text.front())) {
          replacement = capitalize_first(replacement);
        }
        pending.push_back({{prev->begin, c.span.end}, replacement, i, EditRole::Slot});
        continue;
      }
    }

    Span slot = c.span;
    std::string replacement = g.hypernym;
    std::string lower_prev = text::ascii_lower(prev_text);
    bool determiner = prev && (lower_prev == "the" || lower_prev == "a" || lower_prev == "an");
    bool capital = false;
    if (determiner) {
      slot.begin = prev->begin;
      capital = text::is_ascii_upper(prev_text.front());
      if (!has_article(g.hypernym)) {
        bool plural = g.hypernym.size() > 2 && g.hypernym.back() == 's' &&
                      g.hypernym[g.hypernym.size() - 2] != 's';
        replacement = (plural && lower_prev == "the") ? "the " + g.hypernym : with_indefinite(g.hypernym);
      }
    } else {
      capital = is_sentence_start_at(sent, c.span.begin);
    }
    if (capital) replacement = capitalize_first(replacement);
    pending.push_back({slot, replacement, i, EditRole::Slot});
  }

  // Generic-event article agreement: "the mail carrier" -> "a mail carrier".
  for (const auto& [sentence, owner] : absorbing) {
    for (std::size_t w = 0; w + 1 < sent.words.size(); ++w) {
      if (sent.id[w] != sentence) continue;
      std::string_view word = word_text(s, sent.words[w]);
      if (word != "the" && word != "The") continue;
      std::string_view next = word_text(s, sent.words[w + 1]);
      if (sent.id[w + 1] != sentence || !is_lower_ascii_letter(next.front())) continue;
      if (!gap_is_space(s.substr(sent.words[w].end, sent.words[w + 1].begin - sent.words[w].end))) continue;
      Span span{sent.words[w].begin, sent.words[w].end};
      bool covered = std::any_of(pending.begin(), pending.end(),
                                 [&](const PendingEdit& p) { return p.source.overlaps(span); });
      // Also skip a "the" that directly precedes a detail slot.
      bool before_slot = std::any_of(pending.begin(), pending.end(), [&](const PendingEdit& p) {
        return p.source.begin >= span.end && gap_is_space(s.substr(span.end, p.source.begin - span.end));
      });
      if (covered || before_slot) continue;
      std::string article = indefinite_article_for(next);
      if (word == "The") article = capitalize_first(article);
      pending.push_back({span, article, owner, EditRole::Agreement});
    }
  }

  std::sort(pending.begin(), pending.end(), [](const PendingEdit& a, const PendingEdit& b) {
    return a.source.begin < b.source.begin;
  });

  Dart dart;
  dart.source = std::string(s);
  dart.provenance = "constrictor/1 lexicon=" + lexicon.version() +
                    (options.absorb_appositives ? " absorb=on" : " absorb=off");
  std::size_t cursor = 0;
  for (const PendingEdit& p : pending) {
    dart.core.append(s.substr(cursor, p.source.begin - cursor));
    Edit edit;
    edit.detail = p.detail;
    edit.role = p.role;
    edit.at = dart.core.size();
    edit.length = p.replacement.size();
    edit.original = std::string(s.substr(p.source.begin, p.source.size()));
    dart.core += p.replacement;
    dart.edits.push_back(std::move(edit));
    cursor = p.source.end;
  }
  dart.core.append(s.substr(cursor));

  for (std::size_t i = 0; i < cands.size(); ++i) {
    const DetailCandidate& c = cands[i];
    std::string verbatim(s.substr(c.span.begin, c.span.size()));
    Detail d;
    d.index = i;
    d.category = generalized[i].category;
    d.hypernym = generalized[i].hypernym;
    d.surface = (c.entry && text::iequals(verbatim, c.entry->term)) ? c.entry->term : verbatim;
    d.state = DetailState::Inline;
    dart.details.push_back(std::move(d));
  }
  validate(dart);
  return dart;
}

std::vector<std::string> split_paragraphs(std::string_view document) {
  std::vector<std::string> out;
  std::string current;
  std::size_t start = 0;
  auto flush = [&]() {
    while (!current.empty() && current.back() == '\n') current.pop_back();
    if (!text::trim(current).empty()) out.push_back(current);
    current.clear();
  };
  while (start <= document.size()) {
    std::size_t nl = document.find('\n', start);
    std::string_view line =
        document.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (text::trim(line).empty()) {
      flush();
    } else {
      current.append(line);
      current += '\n';
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  flush();
  return out;
}

}  // namespace hyperdart
