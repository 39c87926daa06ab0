#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmof/label.hpp"

namespace cmof {

struct Post {
  std::string id;
  std::string text;
  std::optional<Label> label;
};

struct Dataset {
  LabelScheme scheme;
  std::vector<Post> posts;
  std::string provenance;

  size_t size() const { return posts.size(); }
};

struct SplitSpec {
  double train = 0.8;
  double valid = 0.1;
  double test = 0.1;
  uint64_t seed = 0;
  bool stratified = true;
};

// Loads a UTF-8 TSV with columns (text, label) or (id, text, label).
// An optional header row is auto-detected by checking the label column
// against the scheme's alias table. Posts without an id column get
// synthetic sequential ids. Throws DataError with the offending line
// number on malformed rows or unknown labels.
Dataset load_dataset(const std::string& path, const LabelScheme& scheme);

// Writes `id<TAB>text<TAB>label` with a header row.
// load_dataset(save_dataset(ds)) preserves content.
void save_dataset(const Dataset& ds, const std::string& path);

// Deterministic seeded split into (train, valid, test). Stratified splits
// apportion each class by largest remainder, so per-class counts differ
// from the exact ratio by at most one post.
std::array<Dataset, 3> split(const Dataset& ds, const SplitSpec& spec);

// OLID three-level annotation for one tweet. Absent levels are empty.
struct OlidRow {
  std::string id;
  std::string text;
  std::string subtask_a;  // OFF | NOT
  std::string subtask_b;  // TIN | UNT, present iff a == OFF
  std::string subtask_c;  // IND | GRP | OTH, present iff b == TIN
};

// Maps the hierarchy onto a single label; never produces NOT_IN_LANGUAGE.
// Throws DataError on an inconsistent hierarchy.
Label map_olid(const OlidRow& row);

// Loads the OLID TSV (id, tweet, subtask_a, subtask_b, subtask_c; empty
// cells spelled "NULL") under the 5-label combined scheme.
Dataset load_olid(const std::string& path);

// Concatenates datasets under the combined scheme, dropping every
// NOT_IN_LANGUAGE post and namespacing ids by provenance.
Dataset combine_for_transfer(const std::vector<Dataset>& datasets);

struct RelabelRules {
  std::set<Label> drop;
  std::map<Label, Label> translate;
};

// Re-expresses `ds` under `target`. Labels outside target must be covered
// by a drop or translate rule, otherwise DataError.
Dataset relabel_scheme(const Dataset& ds, const LabelScheme& target,
                       const RelabelRules& rules = {});

}  // namespace cmof
