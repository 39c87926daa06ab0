#include "cmof/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "cmof/error.hpp"
#include "cmof/unicode.hpp"

namespace cmof {

namespace {

struct EmojiName {
  uint32_t cp;
  const char* name;
};

#include "generated/emoji_names.inc"
#include "generated/stopwords.inc"

bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v';
}

bool valid_description(std::string_view desc) {
  if (desc.empty()) return false;
  for (char c : desc) {
    if (!((c >= 'a' && c <= 'z') || c == ' ')) return false;
  }
  return true;
}

}  // namespace

PreprocessConfig PreprocessConfig::classical() {
  PreprocessConfig c;
  c.lowercase = true;
  c.strip_punctuation = true;
  c.strip_mentions = true;
  c.stopword_removal = true;
  c.emoji_mode = EmojiMode::Remove;
  c.stem_english = true;
  return c;
}

PreprocessConfig PreprocessConfig::emoji_describe() {
  PreprocessConfig c;
  c.emoji_mode = EmojiMode::Describe;
  return c;
}

const EmojiTable& EmojiTable::builtin() {
  static const EmojiTable table = [] {
    EmojiTable t;
    for (const auto& e : kEmojiNames) {
      t.insert(utf8_encode(static_cast<char32_t>(e.cp)), e.name);
    }
    return t;
  }();
  return table;
}

void EmojiTable::insert(std::string key, std::string description) {
  if (key.empty() || !valid_description(description)) {
    throw ConfigError("emoji table entry has empty key or non-ASCII description");
  }
  max_key_codepoints_ = std::max(max_key_codepoints_, utf8_decode(key).size());
  table_.emplace(std::move(key), std::move(description));
}

EmojiTable EmojiTable::from_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open emoji table: " + path);
  EmojiTable t;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key<TAB>description");
    }
    t.insert(line.substr(0, tab), line.substr(tab + 1));
  }
  return t;
}

std::optional<std::string> EmojiTable::lookup(std::string_view key) const {
  auto it = table_.find(std::string(key));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

StopwordList::StopwordList(std::unordered_set<std::string> words)
    : words_(std::move(words)) {
  if (words_.empty()) throw ConfigError("stopword list is empty");
  for (const auto& w : words_) {
    for (char c : w) {
      if (c >= 'A' && c <= 'Z') {
        throw ConfigError("stopword not lowercase: " + w);
      }
    }
  }
}

const StopwordList& StopwordList::builtin() {
  static const StopwordList list = [] {
    std::unordered_set<std::string> words;
    for (const char* w : kStopwords) words.insert(w);
    return StopwordList(std::move(words));
  }();
  return list;
}

StopwordList StopwordList::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stopword list: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.insert(line);
  }
  return StopwordList(std::move(words));
}

std::optional<std::string> describe_emoji(std::string_view grapheme,
                                          const EmojiTable& table) {
  if (auto whole = table.lookup(grapheme)) return whole;
  std::u32string cps = utf8_decode(grapheme);
  std::string out;
  bool any = false;
  for (char32_t cp : cps) {
    if (!is_emoji_codepoint(cp)) return std::nullopt;
    if (cp == 0xFE0F || cp == 0x200D) continue;  // joiner / presentation
    auto desc = table.lookup(utf8_encode(cp));
    if (!desc) continue;
    if (!out.empty()) out += ' ';
    out += *desc;
    any = true;
  }
  if (!any) return std::nullopt;
  return out;
}

namespace {

// Emoji pass over the codepoint stream; greedy longest key match so custom
// multi-codepoint table entries win over their prefixes.
std::u32string apply_emoji(const std::u32string& cps, EmojiMode mode,
                           const EmojiTable& table) {
  if (mode == EmojiMode::Keep) return cps;
  std::u32string out;
  out.reserve(cps.size());
  size_t i = 0;
  while (i < cps.size()) {
    if (!is_emoji_codepoint(cps[i])) {
      out.push_back(cps[i++]);
      continue;
    }
    size_t matched = 1;
    std::optional<std::string> desc;
    if (mode == EmojiMode::Describe) {
      size_t max_len = std::min(table.max_key_codepoints(), cps.size() - i);
      for (size_t len = max_len; len >= 1; --len) {
        desc = table.lookup(utf8_encode(cps.substr(i, len)));
        if (desc) {
          matched = len;
          break;
        }
      }
    }
    out.push_back(U' ');
    if (desc) {
      for (char c : *desc) out.push_back(static_cast<char32_t>(c));
      out.push_back(U' ');
    }
    i += matched;
  }
  return out;
}

std::u32string strip_mention_runs(const std::u32string& cps) {
  std::u32string out;
  out.reserve(cps.size());
  size_t i = 0;
  bool at_token_start = true;
  while (i < cps.size()) {
    if (at_token_start && cps[i] == U'@') {
      while (i < cps.size() && !is_space_cp(cps[i])) ++i;
      continue;
    }
    at_token_start = is_space_cp(cps[i]);
    out.push_back(cps[i++]);
  }
  return out;
}

}  // namespace

std::string normalize(std::string_view text, const PreprocessConfig& config,
                      const EmojiTable& emoji, const StopwordList& stopwords) {
  if (config.is_identity()) return std::string(text);

  std::u32string cps = utf8_decode(text);
  if (config.strip_mentions) cps = strip_mention_runs(cps);
  cps = apply_emoji(cps, config.emoji_mode, emoji);
  if (config.lowercase) {
    for (auto& cp : cps) cp = to_lower(cp);
  }
  if (config.strip_punctuation) {
    std::u32string kept;
    kept.reserve(cps.size());
    for (char32_t cp : cps) {
      if (is_punct_or_symbol(cp) && !is_emoji_codepoint(cp)) {
        kept.push_back(U' ');
      } else {
        kept.push_back(cp);
      }
    }
    cps = std::move(kept);
  }

  // Tokenize on whitespace, then token-level filters.
  std::vector<std::string> tokens;
  std::u32string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.push_back(utf8_encode(cur));
      cur.clear();
    }
  };
  for (char32_t cp : cps) {
    if (is_space_cp(cp)) {
      flush();
    } else {
      cur.push_back(cp);
    }
  }
  flush();

  std::vector<std::string> out_tokens;
  out_tokens.reserve(tokens.size());
  for (auto& tok : tokens) {
    if (config.stopword_removal && is_ascii_word(tok) && stopwords.contains(tok)) {
      continue;
    }
    if (config.stem_english) {
      // Stem to fixed point so the whole transform stays idempotent.
      std::string stemmed = stem_token(tok);
      for (int guard = 0; guard < 5 && stemmed != tok; ++guard) {
        tok = stemmed;
        stemmed = stem_token(tok);
      }
      tok = stemmed;
      if (config.stopword_removal && is_ascii_word(tok) &&
          stopwords.contains(tok)) {
        continue;
      }
    }
    out_tokens.push_back(std::move(tok));
  }

  std::string result;
  for (size_t i = 0; i < out_tokens.size(); ++i) {
    if (i) result += ' ';
    result += out_tokens[i];
  }
  return result;
}

std::string normalize(std::string_view text, const PreprocessConfig& config) {
  return normalize(text, config, EmojiTable::builtin(), StopwordList::builtin());
}

bool StopwordList::contains(std::string_view token) const {
  return words_.count(std::string(token)) > 0;
}

}  // namespace cmof
