#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "cmof/label.hpp"

namespace cmof {

// Token -> dense index mapping with document frequencies. Index order is
// first-appearance order.
struct Vocabulary {
  std::vector<std::string> tokens;             // index -> token
  std::unordered_map<std::string, int> index;  // token -> index
  std::vector<int> df;                         // index -> document frequency
  int n_docs = 0;

  int size() const { return static_cast<int>(tokens.size()); }
};

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs);

// Sparse bag-of-words: (index, count) sorted by index, counts >= 1.
struct CountVector {
  std::vector<std::pair<int, int>> entries;
  int vocab_size = 0;

  int count_at(int index) const;
};

// Out-of-vocabulary tokens are dropped.
CountVector vectorize(const std::vector<std::string>& doc,
                      const Vocabulary& vocab);

struct MiScores {
  std::vector<double> values;  // per original token index, nats, >= 0
  int n_docs = 0;
};

// Mutual information between a token's binary document presence and the
// class variable, maximum-likelihood estimates over document counts.
MiScores mutual_information(const std::vector<CountVector>& vectors,
                            const std::vector<Label>& labels,
                            const LabelScheme& scheme);

struct FeatureSelector {
  int k = 0;
  std::vector<int> selected;  // original indices, ascending; remap is rank

  int remap(int original_index) const;
};

// The k highest-MI tokens; ties break toward the lower original index.
FeatureSelector select_top_k(const MiScores& scores, int k);

CountVector project(const CountVector& vec, const FeatureSelector& sel);

// TSV export, `token<TAB>score` sorted by descending score.
void save_mi_scores(const MiScores& scores, const Vocabulary& vocab,
                    const std::string& path);

}  // namespace cmof
