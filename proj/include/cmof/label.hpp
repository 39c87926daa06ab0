#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmof {

enum class Label {
  NotOffensive,
  OffensiveUntargeted,
  OffensiveTargetedIndividual,
  OffensiveTargetedGroup,
  OffensiveTargetedOther,
  NotInLanguage,
};

inline constexpr int kNumLabels = 6;

// Canonical string form, e.g. "NOT_OFFENSIVE". parse_label(to_string(l)) == l.
std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view text);

// An ordered set of labels valid for a dataset. Order defines the component
// order of every probability distribution built against the scheme.
struct LabelScheme {
  std::string name;
  std::vector<Label> labels;

  int size() const { return static_cast<int>(labels.size()); }
  bool contains(Label label) const;
  // Position of `label` in the scheme, or -1.
  int index_of(Label label) const;
};

// Built-in schemes: "tamil" and "kannada" (all 6 labels), "malayalam"
// (no OFFENSIVE_TARGETED_OTHER), "combined" (no NOT_IN_LANGUAGE; also used
// for OLID).
const LabelScheme& scheme_by_name(std::string_view name);
const std::vector<LabelScheme>& builtin_schemes();

// Case-insensitive parse after trimming, accepting both canonical strings
// and the surface spellings used in the task distributions
// ("Not_offensive", "not-Tamil", "Offensive_Untargetede", ...).
// Only labels belonging to the scheme are accepted.
std::optional<Label> parse_label_in_scheme(const LabelScheme& scheme,
                                           std::string_view raw);

}  // namespace cmof
