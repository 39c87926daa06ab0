#include "cmof/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "cmof/error.hpp"

namespace cmof {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<int> class_indices(const std::vector<Label>& labels,
                               const LabelScheme& scheme) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (Label l : labels) {
    int c = scheme.index_of(l);
    if (c < 0) {
      throw DataError("label " + std::string(to_string(l)) +
                      " outside scheme \"" + scheme.name + "\"");
    }
    out.push_back(c);
  }
  return out;
}

void check_training_inputs(const std::vector<CountVector>& vectors,
                           const std::vector<Label>& labels) {
  if (vectors.empty()) throw DataError("no training documents");
  if (vectors.size() != labels.size()) {
    throw DataError("training size mismatch: " +
                    std::to_string(vectors.size()) + " vectors vs " +
                    std::to_string(labels.size()) + " labels");
  }
}

}  // namespace

Label ProbDist::argmax() const {
  int best = 0;
  for (int i = 1; i < values.size(); ++i) {
    if (values(i) > values(best)) best = i;
  }
  return scheme.labels[best];
}

void ProbDist::validate() const {
  if (values.size() != scheme.size()) {
    throw DataError("ProbDist length does not match scheme");
  }
  double sum = 0.0;
  for (int i = 0; i < values.size(); ++i) {
    if (!(values(i) >= 0.0 && values(i) <= 1.0)) {
      throw DataError("ProbDist component outside [0,1]");
    }
    sum += values(i);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DataError("ProbDist sums to " + std::to_string(sum));
  }
}

double log_sum_exp(const Eigen::VectorXd& scores) {
  double hi = scores.maxCoeff();
  return hi + std::log((scores.array() - hi).exp().sum());
}

Eigen::VectorXd softmax(const Eigen::VectorXd& scores) {
  Eigen::ArrayXd shifted = scores.array() - scores.maxCoeff();
  Eigen::ArrayXd e = shifted.exp();
  return (e / e.sum()).matrix();
}

// ---------------------------------------------------------------------------
// Multinomial Naive Bayes

MnbModel train_mnb(const std::vector<CountVector>& vectors,
                   const std::vector<Label>& labels, const LabelScheme& scheme,
                   double alpha) {
  check_training_inputs(vectors, labels);
  if (alpha < 0.0) throw ConfigError("alpha must be >= 0");
  auto classes = class_indices(labels, scheme);
  int n_classes = scheme.size();
  int v = vectors[0].vocab_size;

  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n_classes, v);
  Eigen::VectorXd class_count = Eigen::VectorXd::Zero(n_classes);
  for (size_t d = 0; d < vectors.size(); ++d) {
    class_count(classes[d]) += 1.0;
    for (const auto& [idx, count] : vectors[d].entries) {
      counts(classes[d], idx) += count;
    }
  }
  // Absent classes get -inf priors and never win; only classes that were
  // actually trained need positive counts for alpha = 0.
  if (alpha == 0.0) {
    for (int c = 0; c < n_classes; ++c) {
      if (class_count(c) > 0.0 && (counts.row(c).array() <= 0.0).any()) {
        throw DataError("alpha=0 with a zero (class, feature) count");
      }
    }
  }

  MnbModel model;
  model.scheme = scheme;
  model.alpha = alpha;
  model.vocab_size = v;
  model.log_priors =
      (class_count.array() / static_cast<double>(vectors.size())).log();
  model.log_likelihood.resize(n_classes, v);
  for (int c = 0; c < n_classes; ++c) {
    double denom = counts.row(c).sum() + alpha * v;
    if (denom == 0.0) {
      // Absent class under alpha=0: uniform placeholder, masked by the
      // -inf prior.
      model.log_likelihood.row(c).setConstant(-std::log(double(v)));
    } else {
      model.log_likelihood.row(c) =
          ((counts.row(c).array() + alpha) / denom).log();
    }
  }
  return model;
}

ProbDist predict_mnb(const MnbModel& model, const CountVector& vec) {
  Eigen::VectorXd scores = model.log_priors;
  for (const auto& [idx, count] : vec.entries) {
    if (idx < 0 || idx >= model.vocab_size) {
      throw DataError("feature index out of range for model");
    }
    scores += count * model.log_likelihood.col(idx);
  }
  return {model.scheme, softmax(scores)};
}

// ---------------------------------------------------------------------------
// Linear SVM

namespace {

struct ScaledDoc {
  std::vector<std::pair<int, double>> entries;  // L2-normalized counts
};

std::vector<ScaledDoc> l2_normalize(const std::vector<CountVector>& vectors) {
  std::vector<ScaledDoc> docs(vectors.size());
  for (size_t d = 0; d < vectors.size(); ++d) {
    double sq = 0.0;
    for (const auto& [idx, count] : vectors[d].entries) {
      sq += static_cast<double>(count) * count;
    }
    double norm = sq > 0.0 ? std::sqrt(sq) : 1.0;
    for (const auto& [idx, count] : vectors[d].entries) {
      docs[d].entries.emplace_back(idx, count / norm);
    }
  }
  return docs;
}

double sparse_dot(const Eigen::VectorXd& w, const ScaledDoc& doc) {
  double s = 0.0;
  for (const auto& [idx, val] : doc.entries) s += w(idx) * val;
  return s;
}

std::vector<double> doc_weights(const std::vector<int>& classes, int n_classes,
                                bool class_weighting) {
  std::vector<double> weights(classes.size(), 1.0);
  if (!class_weighting) return weights;
  std::vector<double> freq(n_classes, 0.0);
  for (int c : classes) freq[c] += 1.0;
  double n = static_cast<double>(classes.size());
  for (size_t d = 0; d < classes.size(); ++d) {
    weights[d] = n / (static_cast<double>(n_classes) * freq[classes[d]]);
  }
  return weights;
}

}  // namespace

SvmModel train_svm(const std::vector<CountVector>& vectors,
                   const std::vector<Label>& labels, const LabelScheme& scheme,
                   double lambda, int epochs, uint64_t seed,
                   bool class_weighting) {
  check_training_inputs(vectors, labels);
  if (lambda <= 0.0) throw ConfigError("lambda must be > 0");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  auto classes = class_indices(labels, scheme);
  {
    std::vector<int> distinct(classes);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    if (distinct.size() < 2) {
      throw DataError("SVM training requires at least 2 classes present");
    }
  }

  int n_classes = scheme.size();
  int v = vectors[0].vocab_size;
  auto docs = l2_normalize(vectors);
  auto weights_per_doc = doc_weights(classes, n_classes, class_weighting);

  SvmModel model;
  model.scheme = scheme;
  model.lambda = lambda;
  model.epochs = epochs;
  model.seed = seed;
  model.weights = Eigen::MatrixXd::Zero(n_classes, v);
  model.bias = Eigen::VectorXd::Zero(n_classes);

  size_t n = docs.size();
  for (int c = 0; c < n_classes; ++c) {
    std::mt19937_64 rng(seed + static_cast<uint64_t>(c) * 0x9E3779B97F4A7C15ULL);
    // w represented as scale * dense, so per-step shrinkage is O(1).
    Eigen::VectorXd w = Eigen::VectorXd::Zero(v);
    double scale = 1.0;
    double bias = 0.0;
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    long t = 0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      for (size_t d : order) {
        ++t;
        double eta = 1.0 / (lambda * static_cast<double>(t));
        double y = classes[d] == c ? 1.0 : -1.0;
        double margin = y * (scale * sparse_dot(w, docs[d]) + bias);
        double shrink = 1.0 - eta * lambda;
        if (shrink <= 0.0) {
          w.setZero();
          scale = 1.0;
        } else {
          scale *= shrink;
        }
        if (margin < 1.0) {
          double step = eta * y * weights_per_doc[d] / scale;
          for (const auto& [idx, val] : docs[d].entries) {
            w(idx) += step * val;
          }
          bias += eta * y * weights_per_doc[d];
        }
        if (scale < 1e-9) {
          w *= scale;
          scale = 1.0;
        }
      }
    }
    model.weights.row(c) = (scale * w).transpose();
    model.bias(c) = bias;
  }
  return model;
}

ProbDist predict_svm(const SvmModel& model, const CountVector& vec) {
  double sq = 0.0;
  for (const auto& [idx, count] : vec.entries) {
    sq += static_cast<double>(count) * count;
  }
  double norm = sq > 0.0 ? std::sqrt(sq) : 1.0;
  Eigen::VectorXd margins = model.bias;
  for (const auto& [idx, count] : vec.entries) {
    if (idx < 0 || idx >= model.weights.cols()) {
      throw DataError("feature index out of range for model");
    }
    margins += (count / norm) * model.weights.col(idx);
  }
  return {model.scheme, softmax(margins)};
}

double svm_objective(const SvmModel& model,
                     const std::vector<CountVector>& vectors,
                     const std::vector<Label>& labels, bool class_weighting) {
  auto classes = class_indices(labels, model.scheme);
  auto docs = l2_normalize(vectors);
  auto weights_per_doc =
      doc_weights(classes, model.scheme.size(), class_weighting);
  double obj = 0.0;
  for (int c = 0; c < model.scheme.size(); ++c) {
    Eigen::VectorXd w = model.weights.row(c).transpose();
    double hinge = 0.0;
    for (size_t d = 0; d < docs.size(); ++d) {
      double y = classes[d] == c ? 1.0 : -1.0;
      double m = y * (sparse_dot(w, docs[d]) + model.bias(c));
      hinge += weights_per_doc[d] * std::max(0.0, 1.0 - m);
    }
    obj += 0.5 * model.lambda * w.squaredNorm() +
           hinge / static_cast<double>(docs.size());
  }
  return obj;
}

// ---------------------------------------------------------------------------
// Random forest

namespace {

struct TreeBuilder {
  const std::vector<CountVector>& vectors;
  const std::vector<int>& classes;
  int n_classes;
  int vocab_size;
  int features_per_split;
  std::optional<int> max_depth;
  std::mt19937_64 rng;
  RfTree tree;

  double gini(const std::vector<double>& counts, double total) const {
    if (total <= 0.0) return 0.0;
    double s = 0.0;
    for (double c : counts) s += (c / total) * (c / total);
    return 1.0 - s;
  }

  int build(std::vector<int>& doc_ids, int depth) {
    std::vector<double> counts(n_classes, 0.0);
    for (int d : doc_ids) counts[classes[d]] += 1.0;
    double total = static_cast<double>(doc_ids.size());

    bool pure = false;
    for (int c = 0; c < n_classes; ++c) {
      if (counts[c] == total) pure = true;
    }
    bool depth_hit = max_depth && depth >= *max_depth;

    int best_feature = -1, best_threshold = 0;
    double best_gain = 1e-12;
    if (!pure && !depth_hit && doc_ids.size() >= 2) {
      // Candidate features sampled without replacement, evaluated in
      // ascending index order so ties break deterministically.
      std::vector<int> candidates;
      {
        std::vector<int> pool(vocab_size);
        std::iota(pool.begin(), pool.end(), 0);
        for (int k = 0; k < features_per_split && k < vocab_size; ++k) {
          std::uniform_int_distribution<int> pick(k, vocab_size - 1);
          std::swap(pool[k], pool[pick(rng)]);
          candidates.push_back(pool[k]);
        }
        std::sort(candidates.begin(), candidates.end());
      }
      double parent_impurity = gini(counts, total);
      for (int f : candidates) {
        std::vector<std::pair<int, int>> vals;  // (value, class)
        vals.reserve(doc_ids.size());
        for (int d : doc_ids) {
          vals.emplace_back(vectors[d].count_at(f), classes[d]);
        }
        std::sort(vals.begin(), vals.end());
        std::vector<double> left(n_classes, 0.0);
        std::vector<double> right(counts);
        size_t i = 0;
        while (i < vals.size()) {
          int value = vals[i].first;
          while (i < vals.size() && vals[i].first == value) {
            left[vals[i].second] += 1.0;
            right[vals[i].second] -= 1.0;
            ++i;
          }
          if (i == vals.size()) break;  // no split after the last value
          int threshold = (value + vals[i].first) / 2;
          double nl = static_cast<double>(i);
          double nr = total - nl;
          double gain = parent_impurity -
                        (nl / total) * gini(left, nl) -
                        (nr / total) * gini(right, nr);
          if (gain > best_gain + 1e-12 ||
              (std::abs(gain - best_gain) <= 1e-12 && best_feature >= 0 &&
               (f < best_feature ||
                (f == best_feature && threshold < best_threshold)))) {
            best_gain = gain;
            best_feature = f;
            best_threshold = threshold;
          }
        }
      }
    }

    int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (best_feature < 0) {
      tree.nodes[node_id].histogram =
          Eigen::Map<Eigen::VectorXd>(counts.data(), n_classes);
      return node_id;
    }

    std::vector<int> left_docs, right_docs;
    for (int d : doc_ids) {
      if (vectors[d].count_at(best_feature) <= best_threshold) {
        left_docs.push_back(d);
      } else {
        right_docs.push_back(d);
      }
    }
    tree.nodes[node_id].feature = best_feature;
    tree.nodes[node_id].threshold = best_threshold;
    int left_id = build(left_docs, depth + 1);
    int right_id = build(right_docs, depth + 1);
    tree.nodes[node_id].left = left_id;
    tree.nodes[node_id].right = right_id;
    return node_id;
  }
};

RfTree train_tree(const std::vector<CountVector>& vectors,
                  const std::vector<int>& classes, int n_classes,
                  int vocab_size, int features_per_split,
                  std::optional<int> max_depth, uint64_t tree_seed) {
  TreeBuilder builder{vectors, classes,  n_classes,
                      vocab_size, features_per_split, max_depth,
                      std::mt19937_64(tree_seed)};
  size_t n = vectors.size();
  std::vector<int> sample(n);
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  for (size_t i = 0; i < n; ++i) {
    sample[i] = static_cast<int>(pick(builder.rng));
  }
  builder.build(sample, 0);
  return std::move(builder.tree);
}

}  // namespace

RfModel train_rf(const std::vector<CountVector>& vectors,
                 const std::vector<Label>& labels, const LabelScheme& scheme,
                 int n_trees, std::optional<int> max_depth, uint64_t seed,
                 int threads) {
  check_training_inputs(vectors, labels);
  if (n_trees < 1) throw ConfigError("n_trees must be >= 1");
  auto classes = class_indices(labels, scheme);
  int v = vectors[0].vocab_size;

  RfModel model;
  model.scheme = scheme;
  model.n_trees = n_trees;
  model.max_depth = max_depth;
  model.seed = seed;
  model.vocab_size = v;
  model.features_per_split =
      std::max(1, static_cast<int>(std::ceil(std::sqrt(v))));
  model.trees.resize(n_trees);

  auto work = [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      model.trees[t] =
          train_tree(vectors, classes, scheme.size(), v,
                     model.features_per_split, max_depth,
                     seed + static_cast<uint64_t>(t));
    }
  };
  int n_threads = std::max(1, std::min(threads, n_trees));
  if (n_threads == 1) {
    work(0, n_trees);
  } else {
    std::vector<std::thread> pool;
    int chunk = (n_trees + n_threads - 1) / n_threads;
    for (int k = 0; k < n_threads; ++k) {
      pool.emplace_back(work, k * chunk, std::min(n_trees, (k + 1) * chunk));
    }
    for (auto& th : pool) th.join();
  }
  return model;
}

ProbDist predict_rf(const RfModel& model, const CountVector& vec) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(model.scheme.size());
  for (const auto& tree : model.trees) {
    int node = 0;
    while (tree.nodes[node].feature >= 0) {
      const RfNode& nd = tree.nodes[node];
      node = vec.count_at(nd.feature) <= nd.threshold ? nd.left : nd.right;
    }
    const Eigen::VectorXd& hist = tree.nodes[node].histogram;
    acc += hist / hist.sum();
  }
  return {model.scheme, acc / static_cast<double>(model.trees.size())};
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void write_scheme(std::ostream& out, const LabelScheme& scheme) {
  out << "scheme " << scheme.name << '\n';
  out << "labels";
  for (Label l : scheme.labels) out << ' ' << to_string(l);
  out << '\n';
}

LabelScheme read_scheme(std::istream& in, const std::string& ctx) {
  std::string key, name;
  if (!(in >> key >> name) || key != "scheme") {
    throw DataError(ctx + ": expected scheme line");
  }
  if (!(in >> key) || key != "labels") {
    throw DataError(ctx + ": expected labels line");
  }
  LabelScheme scheme{name, {}};
  std::string rest;
  std::getline(in, rest);
  std::istringstream ls(rest);
  std::string token;
  while (ls >> token) {
    auto l = parse_label(token);
    if (!l) throw DataError(ctx + ": unknown label " + token);
    scheme.labels.push_back(*l);
  }
  if (scheme.labels.empty()) throw DataError(ctx + ": empty label scheme");
  return scheme;
}

void write_vector(std::ostream& out, const char* key,
                  const Eigen::VectorXd& v) {
  out << key;
  for (int i = 0; i < v.size(); ++i) out << ' ' << fmt17(v(i));
  out << '\n';
}

// istream double extraction rejects "inf"/"-inf", which %.17g emits for the
// -inf log priors of absent classes; parse via strtod instead.
double read_double(std::istream& in, const char* key, const std::string& ctx) {
  std::string tok;
  if (!(in >> tok)) throw DataError(ctx + ": truncated " + key);
  const char* begin = tok.c_str();
  char* end = nullptr;
  double d = std::strtod(begin, &end);
  if (end != begin + tok.size()) {
    throw DataError(ctx + ": bad number \"" + tok + "\" in " + key);
  }
  return d;
}

Eigen::VectorXd read_vector(std::istream& in, const char* key, int n,
                            const std::string& ctx) {
  std::string k;
  if (!(in >> k) || k != key) throw DataError(ctx + ": expected " + key);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = read_double(in, key, ctx);
  return v;
}

}  // namespace

std::string model_kind(const Model& model) {
  if (std::holds_alternative<MnbModel>(model)) return "mnb";
  if (std::holds_alternative<SvmModel>(model)) return "svm";
  return "rf";
}

const LabelScheme& model_scheme(const Model& model) {
  return std::visit([](const auto& m) -> const LabelScheme& { return m.scheme; },
                    model);
}

ProbDist predict(const Model& model, const CountVector& vec) {
  if (const auto* m = std::get_if<MnbModel>(&model)) return predict_mnb(*m, vec);
  if (const auto* m = std::get_if<SvmModel>(&model)) return predict_svm(*m, vec);
  return predict_rf(std::get<RfModel>(model), vec);
}

void write_model(const Model& model, std::ostream& out) {
  out << "CMOF-MODEL v1 " << model_kind(model) << '\n';
  if (const auto* m = std::get_if<MnbModel>(&model)) {
    write_scheme(out, m->scheme);
    out << "alpha " << fmt17(m->alpha) << '\n';
    out << "vocab " << m->vocab_size << '\n';
    write_vector(out, "priors", m->log_priors);
    for (int c = 0; c < m->scheme.size(); ++c) {
      write_vector(out, "lik", m->log_likelihood.row(c).transpose());
    }
  } else if (const auto* m = std::get_if<SvmModel>(&model)) {
    write_scheme(out, m->scheme);
    out << "lambda " << fmt17(m->lambda) << '\n';
    out << "epochs " << m->epochs << '\n';
    out << "seed " << m->seed << '\n';
    out << "vocab " << m->weights.cols() << '\n';
    write_vector(out, "bias", m->bias);
    for (int c = 0; c < m->scheme.size(); ++c) {
      write_vector(out, "w", m->weights.row(c).transpose());
    }
  } else {
    const auto& rf = std::get<RfModel>(model);
    write_scheme(out, rf.scheme);
    out << "n_trees " << rf.n_trees << '\n';
    out << "max_depth " << (rf.max_depth ? *rf.max_depth : -1) << '\n';
    out << "features_per_split " << rf.features_per_split << '\n';
    out << "seed " << rf.seed << '\n';
    out << "vocab " << rf.vocab_size << '\n';
    for (const auto& tree : rf.trees) {
      out << "tree " << tree.nodes.size() << '\n';
      for (const auto& node : tree.nodes) {
        out << "node " << node.feature << ' ' << node.threshold << ' '
            << node.left << ' ' << node.right << ' ' << node.histogram.size();
        for (int i = 0; i < node.histogram.size(); ++i) {
          out << ' ' << fmt17(node.histogram(i));
        }
        out << '\n';
      }
    }
  }
  out << "end\n";
}

namespace {

template <typename T>
T read_scalar(std::istream& in, const char* key, const std::string& ctx) {
  std::string k;
  T v;
  if (!(in >> k >> v) || k != key) {
    throw DataError(ctx + ": expected " + key);
  }
  return v;
}

void expect_end(std::istream& in, const std::string& ctx) {
  std::string k;
  if (!(in >> k) || k != "end") throw DataError(ctx + ": truncated model file");
}

}  // namespace

Model read_model(std::istream& in, const std::string& ctx) {
  std::string magic, version, kind;
  if (!(in >> magic >> version >> kind) || magic != "CMOF-MODEL") {
    throw DataError(ctx + ": not a CMOF model file");
  }
  if (version != "v1") {
    throw DataError(ctx + ": unsupported model version " + version);
  }
  if (kind == "mnb") {
    MnbModel m;
    m.scheme = read_scheme(in, ctx);
    m.alpha = read_scalar<double>(in, "alpha", ctx);
    m.vocab_size = read_scalar<int>(in, "vocab", ctx);
    m.log_priors = read_vector(in, "priors", m.scheme.size(), ctx);
    m.log_likelihood.resize(m.scheme.size(), m.vocab_size);
    for (int c = 0; c < m.scheme.size(); ++c) {
      m.log_likelihood.row(c) =
          read_vector(in, "lik", m.vocab_size, ctx).transpose();
    }
    expect_end(in, ctx);
    return m;
  }
  if (kind == "svm") {
    SvmModel m;
    m.scheme = read_scheme(in, ctx);
    m.lambda = read_scalar<double>(in, "lambda", ctx);
    m.epochs = read_scalar<int>(in, "epochs", ctx);
    m.seed = read_scalar<uint64_t>(in, "seed", ctx);
    int v = read_scalar<int>(in, "vocab", ctx);
    m.bias = read_vector(in, "bias", m.scheme.size(), ctx);
    m.weights.resize(m.scheme.size(), v);
    for (int c = 0; c < m.scheme.size(); ++c) {
      m.weights.row(c) = read_vector(in, "w", v, ctx).transpose();
    }
    expect_end(in, ctx);
    return m;
  }
  if (kind == "rf") {
    RfModel m;
    m.scheme = read_scheme(in, ctx);
    m.n_trees = read_scalar<int>(in, "n_trees", ctx);
    int depth = read_scalar<int>(in, "max_depth", ctx);
    if (depth >= 0) m.max_depth = depth;
    m.features_per_split = read_scalar<int>(in, "features_per_split", ctx);
    m.seed = read_scalar<uint64_t>(in, "seed", ctx);
    m.vocab_size = read_scalar<int>(in, "vocab", ctx);
    for (int t = 0; t < m.n_trees; ++t) {
      size_t n_nodes = read_scalar<size_t>(in, "tree", ctx);
      RfTree tree;
      tree.nodes.resize(n_nodes);
      for (auto& node : tree.nodes) {
        std::string k;
        int hist_size;
        if (!(in >> k >> node.feature >> node.threshold >> node.left >>
              node.right >> hist_size) ||
            k != "node") {
          throw DataError(ctx + ": truncated tree node");
        }
        node.histogram.resize(hist_size);
        for (int i = 0; i < hist_size; ++i) {
          if (!(in >> node.histogram(i))) {
            throw DataError(ctx + ": truncated node histogram");
          }
        }
      }
      m.trees.push_back(std::move(tree));
    }
    expect_end(in, ctx);
    return m;
  }
  throw DataError(ctx + ": unknown model kind \"" + kind + "\"");
}

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file: " + path);
  write_model(model, out);
  if (!out) throw DataError("write failed: " + path);
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path);
  return read_model(in, path);
}

}  // namespace cmof
