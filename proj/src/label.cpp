#include "cmof/label.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include "cmof/error.hpp"

namespace cmof {

namespace {

constexpr std::array<std::string_view, kNumLabels> kCanonical = {
    "NOT_OFFENSIVE",
    "OFFENSIVE_UNTARGETED",
    "OFFENSIVE_TARGETED_INDIVIDUAL",
    "OFFENSIVE_TARGETED_GROUP",
    "OFFENSIVE_TARGETED_OTHER",
    "NOT_IN_LANGUAGE",
};

std::string lower_trim(std::string_view raw) {
  size_t b = raw.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = raw.find_last_not_of(" \t\r\n");
  std::string out(raw.substr(b, e - b + 1));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Surface spellings observed across the shared-task files and OLID,
// lowercased. "offensive_untargetede" is a misspelling shipped in the
// Tamil distribution.
struct Alias {
  std::string_view text;
  Label label;
};
constexpr Alias kAliases[] = {
    {"not_offensive", Label::NotOffensive},
    {"not offensive", Label::NotOffensive},
    {"offensive_untargeted", Label::OffensiveUntargeted},
    {"offensive_untargetede", Label::OffensiveUntargeted},
    {"offensive_targeted_insult_individual", Label::OffensiveTargetedIndividual},
    {"offensive_targeted_individual", Label::OffensiveTargetedIndividual},
    {"offensive_targeted_insult_group", Label::OffensiveTargetedGroup},
    {"offensive_targeted_group", Label::OffensiveTargetedGroup},
    {"offensive_targeted_insult_other", Label::OffensiveTargetedOther},
    {"offensive_targeted_other", Label::OffensiveTargetedOther},
    {"not-tamil", Label::NotInLanguage},
    {"not-malayalam", Label::NotInLanguage},
    {"not-kannada", Label::NotInLanguage},
    {"not_in_language", Label::NotInLanguage},
    {"not-in-language", Label::NotInLanguage},
};

}  // namespace

std::string_view to_string(Label label) {
  return kCanonical[static_cast<int>(label)];
}

std::optional<Label> parse_label(std::string_view text) {
  for (int i = 0; i < kNumLabels; ++i) {
    if (text == kCanonical[i]) return static_cast<Label>(i);
  }
  return std::nullopt;
}

bool LabelScheme::contains(Label label) const { return index_of(label) >= 0; }

int LabelScheme::index_of(Label label) const {
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  return -1;
}

const std::vector<LabelScheme>& builtin_schemes() {
  static const std::vector<LabelScheme> schemes = {
      {"tamil",
       {Label::NotOffensive, Label::OffensiveUntargeted,
        Label::OffensiveTargetedIndividual, Label::OffensiveTargetedGroup,
        Label::OffensiveTargetedOther, Label::NotInLanguage}},
      {"kannada",
       {Label::NotOffensive, Label::OffensiveUntargeted,
        Label::OffensiveTargetedIndividual, Label::OffensiveTargetedGroup,
        Label::OffensiveTargetedOther, Label::NotInLanguage}},
      {"malayalam",
       {Label::NotOffensive, Label::OffensiveUntargeted,
        Label::OffensiveTargetedIndividual, Label::OffensiveTargetedGroup,
        Label::NotInLanguage}},
      {"combined",
       {Label::NotOffensive, Label::OffensiveUntargeted,
        Label::OffensiveTargetedIndividual, Label::OffensiveTargetedGroup,
        Label::OffensiveTargetedOther}},
  };
  return schemes;
}

const LabelScheme& scheme_by_name(std::string_view name) {
  for (const auto& s : builtin_schemes()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown label scheme: " + std::string(name));
}

std::optional<Label> parse_label_in_scheme(const LabelScheme& scheme,
                                           std::string_view raw) {
  std::string key = lower_trim(raw);
  std::optional<Label> found;
  for (int i = 0; i < kNumLabels; ++i) {
    if (key == lower_trim(kCanonical[i])) {
      found = static_cast<Label>(i);
      break;
    }
  }
  if (!found) {
    for (const auto& alias : kAliases) {
      if (key == alias.text) {
        found = alias.label;
        break;
      }
    }
  }
  if (found && scheme.contains(*found)) return found;
  return std::nullopt;
}

}  // namespace cmof
