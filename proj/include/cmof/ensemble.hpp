#pragma once

#include <string>
#include <vector>

#include "cmof/label.hpp"
#include "cmof/models.hpp"

namespace cmof {

// One model's predictions over a dataset; the ensemble interchange unit.
struct PredictionSet {
  std::string model_id;
  LabelScheme scheme;
  std::vector<std::pair<std::string, ProbDist>> rows;  // (post id, dist)
};

struct EnsembleConfig {
  std::vector<std::string> members;
  std::vector<double> weights;  // empty means all 1
};

// Weighted arithmetic mean of member probabilities, aligned by post id.
// Members must share a scheme and a post-id set.
PredictionSet average(const std::vector<PredictionSet>& sets,
                      const EnsembleConfig& config = {});

// Argmax per row; ties break toward earlier scheme order.
std::vector<std::pair<std::string, Label>> decode(const PredictionSet& set);

// Interchange TSV: header `id<TAB><label-1>...<label-k>` with canonical
// label strings, one probability row per post, trailing newline.
void save_predictions(const PredictionSet& set, const std::string& path);
// Columns are realigned by header names when `expected` is given.
PredictionSet load_predictions(const std::string& path,
                               const LabelScheme* expected = nullptr);

}  // namespace cmof
