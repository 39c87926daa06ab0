#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmof/corpus.hpp"
#include "cmof/ensemble.hpp"
#include "cmof/features.hpp"
#include "cmof/models.hpp"
#include "cmof/preprocess.hpp"
#include "cmof/tokenize.hpp"

namespace cmof {

// Everything needed to map raw text to a ProbDist: the preprocessing
// config, an optional subword tokenizer, the selected vocabulary and the
// trained classifier. Serialized as one self-describing file so `predict`
// can reproduce the training-time featurization exactly.
struct PipelineModel {
  PreprocessConfig preprocess;
  std::optional<UnigramModel> tokenizer;
  std::vector<std::string> vocab;  // compact index -> token
  Model classifier;

  std::vector<std::string> featurize_text(const std::string& text) const;
  CountVector vectorize_text(const std::string& text) const;
  ProbDist predict_text(const std::string& text) const;

  void save(const std::string& path) const;
  static PipelineModel load(const std::string& path);
};

struct TrainOptions {
  std::string model_kind = "svm";  // mnb | svm | rf
  int top_k = 0;                   // 0 means keep the whole vocabulary
  double mnb_alpha = 1.0;
  double svm_lambda = 1e-4;
  int svm_epochs = 20;
  bool svm_class_weighting = false;
  int rf_trees = 100;
  std::optional<int> rf_max_depth;
  uint64_t seed = 0;
  int threads = 1;
};

PipelineModel train_pipeline(const Dataset& train,
                             const PreprocessConfig& preprocess,
                             const std::optional<UnigramModel>& tokenizer,
                             const TrainOptions& options);

PredictionSet predict_dataset(const PipelineModel& model, const Dataset& ds,
                              const std::string& model_id);

// Weighted-F1 of the pipeline's argmax predictions against the dataset's
// gold labels.
double validation_weighted_f1(const PipelineModel& model, const Dataset& ds);

struct SweepResult {
  PipelineModel best_model;
  TrainOptions best_options;
  double best_weighted_f1 = -1.0;
  // TSV lines (model, k, hyperparameters, weighted_f1) for the sweep log.
  std::vector<std::string> log_rows;
};

// Grid search over MI top-k and the model-specific hyperparameters, scored
// by validation weighted-F1.
SweepResult sweep_pipeline(const Dataset& train, const Dataset& valid,
                           const PreprocessConfig& preprocess,
                           const std::optional<UnigramModel>& tokenizer,
                           const TrainOptions& base);

// Stable module seed derivation from the run seed (FNV-1a over the name).
uint64_t derive_seed(uint64_t run_seed, std::string_view module_name);

}  // namespace cmof
