#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace cmof {

enum class EmojiMode { Keep, Remove, Describe };

struct PreprocessConfig {
  bool lowercase = false;
  bool strip_punctuation = false;
  bool strip_mentions = false;
  bool stopword_removal = false;
  EmojiMode emoji_mode = EmojiMode::Keep;
  bool stem_english = false;

  bool is_identity() const {
    return !lowercase && !strip_punctuation && !strip_mentions &&
           !stopword_removal && !stem_english && emoji_mode == EmojiMode::Keep;
  }

  // The classical-ML regime: everything on, emoji removed.
  static PreprocessConfig classical();
  // The emoji-description regime: only emoji replaced by descriptions.
  static PreprocessConfig emoji_describe();
};

// Emoji codepoint sequence (UTF-8) -> lowercase English description.
class EmojiTable {
 public:
  static const EmojiTable& builtin();
  // `key<TAB>description` per line; descriptions must be ASCII letters
  // and spaces.
  static EmojiTable from_tsv(const std::string& path);

  std::optional<std::string> lookup(std::string_view key) const;
  size_t max_key_codepoints() const { return max_key_codepoints_; }
  size_t size() const { return table_.size(); }

  void insert(std::string key, std::string description);

 private:
  std::unordered_map<std::string, std::string> table_;
  size_t max_key_codepoints_ = 1;
};

class StopwordList {
 public:
  static const StopwordList& builtin();
  // One lowercase token per line.
  static StopwordList from_file(const std::string& path);
  explicit StopwordList(std::unordered_set<std::string> words);

  bool contains(std::string_view token) const;
  size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Applies the configured transformations in fixed order: mention stripping,
// emoji handling, lowercasing, punctuation stripping, whitespace
// tokenization, stopword removal, stemming, re-join with single spaces.
// Idempotent for every config; the all-off config is the identity.
std::string normalize(std::string_view text, const PreprocessConfig& config,
                      const EmojiTable& emoji, const StopwordList& stopwords);
std::string normalize(std::string_view text, const PreprocessConfig& config);

// Porter suffix-stripping stem of a lowercase token. Non-ASCII tokens are
// returned unchanged; the result is never empty.
std::string stem_token(std::string_view token);

// Description of an emoji grapheme (multi-emoji runs expand to space-joined
// descriptions); absent for non-emoji input.
std::optional<std::string> describe_emoji(std::string_view grapheme,
                                          const EmojiTable& table);

}  // namespace cmof
