#include "cmof/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "cmof/error.hpp"

namespace cmof {

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs) {
  if (docs.empty()) throw ConfigError("build_vocabulary: no documents");
  Vocabulary vocab;
  vocab.n_docs = static_cast<int>(docs.size());
  for (const auto& doc : docs) {
    std::vector<int> seen_this_doc;
    for (const auto& tok : doc) {
      auto [it, inserted] = vocab.index.emplace(tok, vocab.size());
      if (inserted) {
        vocab.tokens.push_back(tok);
        vocab.df.push_back(0);
      }
      int idx = it->second;
      if (std::find(seen_this_doc.begin(), seen_this_doc.end(), idx) ==
          seen_this_doc.end()) {
        seen_this_doc.push_back(idx);
        ++vocab.df[idx];
      }
    }
  }
  return vocab;
}

int CountVector::count_at(int index) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), index,
      [](const std::pair<int, int>& e, int v) { return e.first < v; });
  return (it != entries.end() && it->first == index) ? it->second : 0;
}

CountVector vectorize(const std::vector<std::string>& doc,
                      const Vocabulary& vocab) {
  std::unordered_map<int, int> counts;
  for (const auto& tok : doc) {
    auto it = vocab.index.find(tok);
    if (it != vocab.index.end()) ++counts[it->second];
  }
  CountVector vec;
  vec.vocab_size = vocab.size();
  vec.entries.assign(counts.begin(), counts.end());
  std::sort(vec.entries.begin(), vec.entries.end());
  return vec;
}

MiScores mutual_information(const std::vector<CountVector>& vectors,
                            const std::vector<Label>& labels,
                            const LabelScheme& scheme) {
  if (vectors.size() != labels.size()) {
    throw DataError("mutual_information: " + std::to_string(vectors.size()) +
                    " vectors vs " + std::to_string(labels.size()) + " labels");
  }
  if (vectors.empty()) throw DataError("mutual_information: empty input");

  int n_docs = static_cast<int>(vectors.size());
  int n_classes = scheme.size();
  int vocab_size = vectors[0].vocab_size;

  std::vector<int> class_count(n_classes, 0);
  for (Label l : labels) {
    int c = scheme.index_of(l);
    if (c < 0) throw DataError("mutual_information: label outside scheme");
    ++class_count[c];
  }

  // present[t][c]: documents of class c containing token t.
  std::vector<std::vector<int>> present(vocab_size,
                                        std::vector<int>(n_classes, 0));
  for (size_t d = 0; d < vectors.size(); ++d) {
    int c = scheme.index_of(labels[d]);
    for (const auto& [idx, count] : vectors[d].entries) {
      if (idx < 0 || idx >= vocab_size) {
        throw DataError("mutual_information: index out of range");
      }
      if (count > 0) ++present[idx][c];
    }
  }

  MiScores scores;
  scores.n_docs = n_docs;
  scores.values.resize(vocab_size, 0.0);
  const double n = static_cast<double>(n_docs);
  for (int t = 0; t < vocab_size; ++t) {
    int n1 = std::accumulate(present[t].begin(), present[t].end(), 0);
    double mi = 0.0;
    for (int c = 0; c < n_classes; ++c) {
      double pc = class_count[c] / n;
      if (pc == 0.0) continue;
      // u = 1: token present
      double p1c = present[t][c] / n;
      if (p1c > 0.0) mi += p1c * std::log(p1c / ((n1 / n) * pc));
      // u = 0: token absent
      double p0c = (class_count[c] - present[t][c]) / n;
      if (p0c > 0.0) mi += p0c * std::log(p0c / (((n - n1) / n) * pc));
    }
    if (mi < -1e-12) {
      throw DataError("mutual_information: negative MI beyond tolerance");
    }
    scores.values[t] = std::max(mi, 0.0);
  }
  return scores;
}

int FeatureSelector::remap(int original_index) const {
  auto it = std::lower_bound(selected.begin(), selected.end(), original_index);
  if (it == selected.end() || *it != original_index) return -1;
  return static_cast<int>(it - selected.begin());
}

FeatureSelector select_top_k(const MiScores& scores, int k) {
  if (k < 1) throw ConfigError("select_top_k: k must be >= 1");
  int v = static_cast<int>(scores.values.size());
  std::vector<int> order(v);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores.values[a] > scores.values[b];
  });
  FeatureSelector sel;
  sel.k = k;
  int take = std::min(k, v);
  sel.selected.assign(order.begin(), order.begin() + take);
  std::sort(sel.selected.begin(), sel.selected.end());
  return sel;
}

CountVector project(const CountVector& vec, const FeatureSelector& sel) {
  CountVector out;
  out.vocab_size = static_cast<int>(sel.selected.size());
  for (const auto& [idx, count] : vec.entries) {
    int mapped = sel.remap(idx);
    if (mapped >= 0) out.entries.emplace_back(mapped, count);
  }
  return out;
}

void save_mi_scores(const MiScores& scores, const Vocabulary& vocab,
                    const std::string& path) {
  if (static_cast<int>(scores.values.size()) != vocab.size()) {
    throw DataError("save_mi_scores: vocabulary size mismatch");
  }
  std::vector<int> order(vocab.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores.values[a] > scores.values[b];
  });
  std::ofstream out(path);
  if (!out) throw DataError("cannot write MI scores: " + path);
  char buf[64];
  for (int idx : order) {
    std::snprintf(buf, sizeof(buf), "%.17g", scores.values[idx]);
    out << vocab.tokens[idx] << '\t' << buf << '\n';
  }
}

}  // namespace cmof
