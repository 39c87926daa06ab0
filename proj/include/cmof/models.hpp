#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cmof/features.hpp"
#include "cmof/label.hpp"

namespace cmof {

// Probability distribution over a label scheme, components in scheme order.
struct ProbDist {
  LabelScheme scheme;
  Eigen::VectorXd values;

  // Argmax label; ties break toward earlier scheme order.
  Label argmax() const;
  // Throws DataError unless components are in [0,1] and sum to 1 +- 1e-9.
  void validate() const;
};

// Numerically stable softmax / log-sum-exp over dense vectors.
Eigen::VectorXd softmax(const Eigen::VectorXd& scores);
double log_sum_exp(const Eigen::VectorXd& scores);

// ---------------------------------------------------------------------------
// Multinomial Naive Bayes

struct MnbModel {
  LabelScheme scheme;
  double alpha = 1.0;
  Eigen::VectorXd log_priors;    // per class
  Eigen::MatrixXd log_likelihood;  // classes x features
  int vocab_size = 0;
};

// priors by class-count MLE; likelihood(c,f) = (count+alpha)/(total+alpha*V).
// alpha = 0 is allowed only when every (class, feature) count is positive.
MnbModel train_mnb(const std::vector<CountVector>& vectors,
                   const std::vector<Label>& labels, const LabelScheme& scheme,
                   double alpha = 1.0);
ProbDist predict_mnb(const MnbModel& model, const CountVector& vec);

// ---------------------------------------------------------------------------
// One-vs-rest linear SVM (Pegasos stochastic subgradient)

struct SvmModel {
  LabelScheme scheme;
  Eigen::MatrixXd weights;  // classes x features
  Eigen::VectorXd bias;     // per class
  double lambda = 0.0;
  int epochs = 0;
  uint64_t seed = 0;
};

// Documents are L2-normalized before training. Per-class hinge losses may
// optionally be weighted by inverse class frequency.
SvmModel train_svm(const std::vector<CountVector>& vectors,
                   const std::vector<Label>& labels, const LabelScheme& scheme,
                   double lambda, int epochs, uint64_t seed,
                   bool class_weighting = false);
// Softmax over per-class margins; argmax equals the margin argmax.
ProbDist predict_svm(const SvmModel& model, const CountVector& vec);

// Regularized objective lambda/2 ||w||^2 + mean (weighted) hinge, evaluated
// on the given data. Exposed for convergence tests.
double svm_objective(const SvmModel& model,
                     const std::vector<CountVector>& vectors,
                     const std::vector<Label>& labels,
                     bool class_weighting = false);

// ---------------------------------------------------------------------------
// Random forest with Gini-impurity splits on integer counts

struct RfNode {
  int feature = -1;    // -1 for leaves
  int threshold = 0;   // go left when count <= threshold
  int left = -1;
  int right = -1;
  Eigen::VectorXd histogram;  // leaf class counts (empty for internal nodes)
};

struct RfTree {
  std::vector<RfNode> nodes;  // node 0 is the root
};

struct RfModel {
  LabelScheme scheme;
  std::vector<RfTree> trees;
  int n_trees = 0;
  std::optional<int> max_depth;
  int features_per_split = 0;  // ceil(sqrt(V))
  uint64_t seed = 0;
  int vocab_size = 0;
};

// Per-tree seeds derive from seed + tree index, so parallel and serial
// training produce identical forests.
RfModel train_rf(const std::vector<CountVector>& vectors,
                 const std::vector<Label>& labels, const LabelScheme& scheme,
                 int n_trees, std::optional<int> max_depth, uint64_t seed,
                 int threads = 1);
ProbDist predict_rf(const RfModel& model, const CountVector& vec);

// ---------------------------------------------------------------------------
// Serialization: line-oriented text with magic `CMOF-MODEL v1 <kind>`;
// exact round-trip (17 significant digits).

using Model = std::variant<MnbModel, SvmModel, RfModel>;

ProbDist predict(const Model& model, const CountVector& vec);
const LabelScheme& model_scheme(const Model& model);
std::string model_kind(const Model& model);

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

// Stream forms used by the pipeline bundle format.
void write_model(const Model& model, std::ostream& out);
Model read_model(std::istream& in, const std::string& context);

}  // namespace cmof
