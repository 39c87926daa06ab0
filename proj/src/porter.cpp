// Porter suffix-stripping stemmer (the 1980 algorithm).
#include <string>
#include <string_view>

#include "cmof/preprocess.hpp"
#include "cmof/unicode.hpp"

namespace cmof {

namespace {

bool is_vowel_letter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

class Stemmer {
 public:
  explicit Stemmer(std::string word) : w_(std::move(word)) {}

  std::string run() {
    if (w_.size() <= 2) return w_;
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return w_;
  }

 private:
  std::string w_;

  bool cons(size_t i) const {
    char c = w_[i];
    if (is_vowel_letter(c)) return false;
    if (c == 'y') return i == 0 ? true : !cons(i - 1);
    return true;
  }

  // Number of VC sequences in w_[0..end).
  int measure(size_t end) const {
    int m = 0;
    size_t i = 0;
    while (true) {
      if (i == end) return m;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i == end) return m;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++m;
      while (true) {
        if (i == end) return m;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool has_vowel(size_t end) const {
    for (size_t i = 0; i < end; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_cons() const {
    size_t n = w_.size();
    return n >= 2 && w_[n - 1] == w_[n - 2] && cons(n - 1);
  }

  // consonant-vowel-consonant ending where the final consonant is not
  // w, x or y; measured on w_[0..end).
  bool cvc(size_t end) const {
    if (end < 3) return false;
    if (!cons(end - 1) || cons(end - 2) || !cons(end - 3)) return false;
    char c = w_[end - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view suffix) const {
    return w_.size() >= suffix.size() &&
           std::string_view(w_).substr(w_.size() - suffix.size()) == suffix;
  }

  size_t stem_len(std::string_view suffix) const {
    return w_.size() - suffix.size();
  }

  void replace(std::string_view suffix, std::string_view with) {
    w_.resize(w_.size() - suffix.size());
    w_.append(with);
  }

  // Longest-match rule application with a measure condition on the stem.
  bool rule(std::string_view suffix, std::string_view with, int min_m) {
    if (!ends(suffix)) return false;
    if (measure(stem_len(suffix)) > min_m - 1) replace(suffix, with);
    return true;  // suffix matched; stop scanning this step either way
  }

  void step1a() {
    if (ends("sses")) {
      replace("sses", "ss");
    } else if (ends("ies")) {
      replace("ies", "i");
    } else if (ends("ss")) {
      // keep
    } else if (ends("s")) {
      replace("s", "");
    }
  }

  void step1b() {
    if (ends("eed")) {
      if (measure(stem_len("eed")) > 0) replace("eed", "ee");
      return;
    }
    bool stripped = false;
    if (ends("ed") && has_vowel(stem_len("ed"))) {
      replace("ed", "");
      stripped = true;
    } else if (ends("ing") && has_vowel(stem_len("ing"))) {
      replace("ing", "");
      stripped = true;
    }
    if (!stripped) return;
    if (ends("at") || ends("bl") || ends("iz")) {
      w_.push_back('e');
    } else if (double_cons()) {
      char c = w_.back();
      if (c != 'l' && c != 's' && c != 'z') w_.pop_back();
    } else if (measure(w_.size()) == 1 && cvc(w_.size())) {
      w_.push_back('e');
    }
  }

  void step1c() {
    if (ends("y") && has_vowel(stem_len("y"))) w_.back() = 'i';
  }

  void step2() {
    static constexpr std::pair<std::string_view, std::string_view> rules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
        {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
        {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
        {"iviti", "ive"},   {"biliti", "ble"},
    };
    for (const auto& [suffix, with] : rules) {
      if (rule(suffix, with, 1)) return;
    }
  }

  void step3() {
    static constexpr std::pair<std::string_view, std::string_view> rules[] = {
        {"icate", "ic"}, {"ative", ""},  {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},    {"ness", ""},
    };
    for (const auto& [suffix, with] : rules) {
      if (rule(suffix, with, 1)) return;
    }
  }

  void step4() {
    static constexpr std::string_view suffixes[] = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement",
        "ment", "ent",  "ion",  "ou",  "ism", "ate",  "iti",  "ous", "ive",
        "ize",
    };
    for (std::string_view suffix : suffixes) {
      if (!ends(suffix)) continue;
      size_t stem = stem_len(suffix);
      if (suffix == "ion" && !(stem > 0 && (w_[stem - 1] == 's' || w_[stem - 1] == 't'))) {
        return;
      }
      if (measure(stem) > 1) replace(suffix, "");
      return;
    }
  }

  void step5a() {
    if (!ends("e")) return;
    size_t stem = stem_len("e");
    int m = measure(stem);
    if (m > 1 || (m == 1 && !cvc(stem))) replace("e", "");
  }

  void step5b() {
    if (w_.size() >= 2 && w_.back() == 'l' && double_cons() &&
        measure(w_.size()) > 1) {
      w_.pop_back();
    }
  }
};

bool all_ascii_lower_alpha(std::string_view token) {
  for (char c : token) {
    if (c < 'a' || c > 'z') return false;
  }
  return true;
}

}  // namespace

std::string stem_token(std::string_view token) {
  if (token.empty()) return std::string(token);
  if (!all_ascii_lower_alpha(token)) return std::string(token);
  std::string out = Stemmer(std::string(token)).run();
  return out.empty() ? std::string(token) : out;
}

}  // namespace cmof
