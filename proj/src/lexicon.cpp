#include "hyperdart/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "hyperdart/error.hpp"
#include "hyperdart/text.hpp"

namespace hyperdart {

std::string_view to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::ProperNoun: return "PROPER_NOUN";
    case DetectorKind::Numeric: return "NUMERIC";
    case DetectorKind::Time: return "TIME";
    case DetectorKind::Lexicon: return "LEXICON";
  }
  return "LEXICON";
}

namespace {

std::string first_word_key(std::string_view s, std::size_t pos = 0) {
  std::string key;
  while (pos < s.size() && text::is_ascii_alnum(s[pos])) {
    key += text::ascii_lower(s[pos]);
    ++pos;
  }
  if (key.empty() && pos < s.size()) {
    std::size_t len = 1;
    text::decode_utf8(s, pos, len);
    key = std::string(s.substr(pos, len));
  }
  return key;
}

}  // namespace

std::string HypernymLexicon::key_of(std::string_view term) {
  std::string key;
  bool in_space = false;
  for (char c : text::trim(term)) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      in_space = true;
      continue;
    }
    if (in_space) key += ' ';
    in_space = false;
    key += text::ascii_lower(c);
  }
  return key;
}

void HypernymLexicon::add(LexiconEntry entry) {
  std::string key = key_of(entry.term);
  if (key.empty()) throw LexiconError("lexicon term is empty");
  if (entry.hypernym.empty() || entry.category.empty()) {
    throw LexiconError(fmt::format("entry '{}' lacks a hypernym or category", entry.term));
  }
  if (key == key_of(entry.hypernym)) {
    throw LexiconError(fmt::format("entry '{}' maps a term to itself", entry.term));
  }
  if (by_key_.count(key)) {
    throw LexiconError(fmt::format("duplicate lexicon term '{}'", entry.term));
  }
  std::size_t id = entries_.size();
  by_key_.emplace(key, id);
  auto& bucket = by_first_word_[first_word_key(key)];
  entries_.push_back(std::move(entry));
  bucket.push_back(id);
  std::stable_sort(bucket.begin(), bucket.end(), [&](std::size_t a, std::size_t b) {
    return key_of(entries_[a].term).size() > key_of(entries_[b].term).size();
  });
}

HypernymLexicon HypernymLexicon::from_string(std::string_view content, std::string name) {
  HypernymLexicon lexicon;
  lexicon.name_ = std::move(name);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t nl = content.find('\n', start);
    std::string_view line = content.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? content.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    std::vector<std::string_view> fields;
    std::size_t f = 0;
    while (true) {
      std::size_t tab = line.find('\t', f);
      fields.push_back(line.substr(f, tab == std::string_view::npos ? std::string_view::npos : tab - f));
      if (tab == std::string_view::npos) break;
      f = tab + 1;
    }
    if (fields.size() != 3) {
      throw LexiconError(fmt::format("{}:{}: expected term<TAB>hypernym<TAB>category",
                                     lexicon.name_, line_no));
    }
    try {
      lexicon.add({std::string(text::trim(fields[0])), std::string(text::trim(fields[1])),
                   std::string(text::trim(fields[2]))});
    } catch (const LexiconError& err) {
      throw LexiconError(fmt::format("{}:{}: {}", lexicon.name_, line_no, err.what()));
    }
  }
  return lexicon;
}

HypernymLexicon HypernymLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open lexicon");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str(), path.filename().string());
}

const LexiconEntry* HypernymLexicon::find(std::string_view term) const {
  auto it = by_key_.find(key_of(term));
  return it == by_key_.end() ? nullptr : &entries_[it->second];
}

const LexiconEntry* HypernymLexicon::longest_match(std::string_view text, std::size_t pos,
                                                   std::size_t& length) const {
  auto it = by_first_word_.find(first_word_key(text, pos));
  if (it == by_first_word_.end()) return nullptr;
  for (std::size_t id : it->second) {
    std::string key = key_of(entries_[id].term);
    std::size_t t = pos;
    bool ok = true;
    for (std::size_t k = 0; k < key.size() && ok; ++k) {
      if (key[k] == ' ') {
        // a term space matches a run of at least one whitespace character
        std::size_t consumed = 0;
        std::size_t ws = 0;
        while (t < text.size() && (ws = text::space_length_at(text, t)) > 0) {
          t += ws;
          ++consumed;
        }
        ok = consumed > 0;
        continue;
      }
      if (t >= text.size() || text::ascii_lower(text[t]) != key[k]) {
        ok = false;
        break;
      }
      ++t;
    }
    if (!ok) continue;
    bool boundary = t >= text.size() || !text::is_word_char_at(text, t) ||
                    !text::is_ascii_alnum(key.back());
    if (!boundary) continue;
    length = t - pos;
    return &entries_[id];
  }
  return nullptr;
}

std::string_view HypernymLexicon::fallback(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::ProperNoun: return "an entity";
    case DetectorKind::Numeric: return "a number";
    case DetectorKind::Time: return "a time";
    case DetectorKind::Lexicon: return "a thing";
  }
  return "an entity";
}

std::string HypernymLexicon::version() const {
  std::string all;
  for (const auto& e : entries_) all += e.term + '\t' + e.hypernym + '\t' + e.category + '\n';
  return fmt::format("{}@{}", name_, text::hex64(text::fnv1a64(all)));
}

}  // namespace hyperdart
