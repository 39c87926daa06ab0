#include "cmof/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "cmof/error.hpp"
#include "cmof/eval.hpp"

namespace cmof {

namespace {

std::string emoji_mode_name(EmojiMode mode) {
  switch (mode) {
    case EmojiMode::Keep:
      return "keep";
    case EmojiMode::Remove:
      return "remove";
    case EmojiMode::Describe:
      return "describe";
  }
  return "keep";
}

EmojiMode parse_emoji_mode(const std::string& name) {
  if (name == "keep") return EmojiMode::Keep;
  if (name == "remove") return EmojiMode::Remove;
  if (name == "describe") return EmojiMode::Describe;
  throw ConfigError("unknown emoji mode: " + name);
}

}  // namespace

std::vector<std::string> PipelineModel::featurize_text(
    const std::string& text) const {
  std::string cleaned = normalize(text, preprocess);
  if (tokenizer) return segment(*tokenizer, cleaned);
  return word_tokenize(cleaned);
}

CountVector PipelineModel::vectorize_text(const std::string& text) const {
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < vocab.size(); ++i) {
    index.emplace(vocab[i], static_cast<int>(i));
  }
  std::unordered_map<int, int> counts;
  for (const auto& tok : featurize_text(text)) {
    auto it = index.find(tok);
    if (it != index.end()) ++counts[it->second];
  }
  CountVector vec;
  vec.vocab_size = static_cast<int>(vocab.size());
  vec.entries.assign(counts.begin(), counts.end());
  std::sort(vec.entries.begin(), vec.entries.end());
  return vec;
}

ProbDist PipelineModel::predict_text(const std::string& text) const {
  return predict(classifier, vectorize_text(text));
}

void PipelineModel::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file: " + path);
  out << "CMOF-MODEL v1 pipeline\n";
  out << "preprocess lowercase=" << preprocess.lowercase
      << " strip_punctuation=" << preprocess.strip_punctuation
      << " strip_mentions=" << preprocess.strip_mentions
      << " stopword_removal=" << preprocess.stopword_removal
      << " emoji_mode=" << emoji_mode_name(preprocess.emoji_mode)
      << " stem_english=" << preprocess.stem_english << '\n';
  if (tokenizer) {
    out << "tokenizer " << tokenizer->size() << '\n';
    char buf[64];
    for (const auto& [piece, lp] : tokenizer->pieces()) {
      std::snprintf(buf, sizeof(buf), "%.17g", lp);
      out << piece << '\t' << buf << '\n';
    }
  } else {
    out << "tokenizer none\n";
  }
  out << "vocab " << vocab.size() << '\n';
  for (const auto& tok : vocab) out << tok << '\n';
  write_model(classifier, out);
  if (!out) throw DataError("write failed: " + path);
}

PipelineModel PipelineModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "CMOF-MODEL v1 pipeline") {
    throw DataError(path + ": not a CMOF pipeline model");
  }
  PipelineModel model;
  if (!std::getline(in, line) || line.rfind("preprocess ", 0) != 0) {
    throw DataError(path + ": expected preprocess line");
  }
  {
    std::istringstream ls(line.substr(11));
    std::string kv;
    while (ls >> kv) {
      size_t eq = kv.find('=');
      if (eq == std::string::npos) {
        throw DataError(path + ": bad preprocess entry " + kv);
      }
      std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
      if (key == "lowercase") model.preprocess.lowercase = value == "1";
      else if (key == "strip_punctuation") model.preprocess.strip_punctuation = value == "1";
      else if (key == "strip_mentions") model.preprocess.strip_mentions = value == "1";
      else if (key == "stopword_removal") model.preprocess.stopword_removal = value == "1";
      else if (key == "emoji_mode") model.preprocess.emoji_mode = parse_emoji_mode(value);
      else if (key == "stem_english") model.preprocess.stem_english = value == "1";
      else throw DataError(path + ": unknown preprocess key " + key);
    }
  }
  if (!std::getline(in, line) || line.rfind("tokenizer ", 0) != 0) {
    throw DataError(path + ": expected tokenizer line");
  }
  std::string tok_spec = line.substr(10);
  if (tok_spec != "none") {
    size_t n = std::stoul(tok_spec);
    std::vector<std::pair<std::string, double>> pieces;
    pieces.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      if (!std::getline(in, line)) throw DataError(path + ": truncated tokenizer");
      size_t tab = line.rfind('\t');
      if (tab == std::string::npos) throw DataError(path + ": bad piece line");
      pieces.emplace_back(line.substr(0, tab), std::stod(line.substr(tab + 1)));
    }
    model.tokenizer = UnigramModel(std::move(pieces));
  }
  if (!std::getline(in, line) || line.rfind("vocab ", 0) != 0) {
    throw DataError(path + ": expected vocab line");
  }
  size_t vocab_size = std::stoul(line.substr(6));
  model.vocab.reserve(vocab_size);
  for (size_t i = 0; i < vocab_size; ++i) {
    if (!std::getline(in, line)) throw DataError(path + ": truncated vocabulary");
    model.vocab.push_back(line);
  }
  model.classifier = read_model(in, path);
  return model;
}

namespace {

struct Featurized {
  std::vector<CountVector> vectors;
  std::vector<Label> labels;
  Vocabulary vocab;
};

Featurized featurize_dataset(const Dataset& ds,
                             const PreprocessConfig& preprocess,
                             const std::optional<UnigramModel>& tokenizer) {
  std::vector<std::vector<std::string>> docs;
  Featurized out;
  docs.reserve(ds.posts.size());
  for (const auto& post : ds.posts) {
    if (!post.label) {
      throw DataError("training post \"" + post.id + "\" has no label");
    }
    std::string cleaned = normalize(post.text, preprocess);
    docs.push_back(tokenizer ? segment(*tokenizer, cleaned)
                             : word_tokenize(cleaned));
    out.labels.push_back(*post.label);
  }
  out.vocab = build_vocabulary(docs);
  out.vectors.reserve(docs.size());
  for (const auto& doc : docs) out.vectors.push_back(vectorize(doc, out.vocab));
  return out;
}

Model train_classifier(const std::vector<CountVector>& vectors,
                       const std::vector<Label>& labels,
                       const LabelScheme& scheme, const TrainOptions& opt) {
  if (opt.model_kind == "mnb") {
    return train_mnb(vectors, labels, scheme, opt.mnb_alpha);
  }
  if (opt.model_kind == "svm") {
    return train_svm(vectors, labels, scheme, opt.svm_lambda, opt.svm_epochs,
                     opt.seed, opt.svm_class_weighting);
  }
  if (opt.model_kind == "rf") {
    return train_rf(vectors, labels, scheme, opt.rf_trees, opt.rf_max_depth,
                    opt.seed, opt.threads);
  }
  throw ConfigError("unknown model kind: " + opt.model_kind);
}

}  // namespace

PipelineModel train_pipeline(const Dataset& train,
                             const PreprocessConfig& preprocess,
                             const std::optional<UnigramModel>& tokenizer,
                             const TrainOptions& options) {
  auto feats = featurize_dataset(train, preprocess, tokenizer);

  PipelineModel model;
  model.preprocess = preprocess;
  model.tokenizer = tokenizer;

  std::vector<CountVector> vectors;
  if (options.top_k > 0 && options.top_k < feats.vocab.size()) {
    auto scores = mutual_information(feats.vectors, feats.labels, train.scheme);
    auto sel = select_top_k(scores, options.top_k);
    for (int orig : sel.selected) model.vocab.push_back(feats.vocab.tokens[orig]);
    vectors.reserve(feats.vectors.size());
    for (const auto& v : feats.vectors) vectors.push_back(project(v, sel));
  } else {
    model.vocab = feats.vocab.tokens;
    vectors = std::move(feats.vectors);
  }

  model.classifier =
      train_classifier(vectors, feats.labels, train.scheme, options);
  return model;
}

PredictionSet predict_dataset(const PipelineModel& model, const Dataset& ds,
                              const std::string& model_id) {
  PredictionSet set;
  set.model_id = model_id;
  set.scheme = model_scheme(model.classifier);
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < model.vocab.size(); ++i) {
    index.emplace(model.vocab[i], static_cast<int>(i));
  }
  for (const auto& post : ds.posts) {
    std::unordered_map<int, int> counts;
    for (const auto& tok : model.featurize_text(post.text)) {
      auto it = index.find(tok);
      if (it != index.end()) ++counts[it->second];
    }
    CountVector vec;
    vec.vocab_size = static_cast<int>(model.vocab.size());
    vec.entries.assign(counts.begin(), counts.end());
    std::sort(vec.entries.begin(), vec.entries.end());
    set.rows.emplace_back(post.id, predict(model.classifier, vec));
  }
  return set;
}

double validation_weighted_f1(const PipelineModel& model, const Dataset& ds) {
  std::vector<Label> y_true, y_pred;
  auto preds = predict_dataset(model, ds, "eval");
  std::unordered_map<std::string, Label> by_id;
  for (const auto& [id, dist] : preds.rows) by_id.emplace(id, dist.argmax());
  for (const auto& post : ds.posts) {
    if (!post.label) throw DataError("post \"" + post.id + "\" has no gold label");
    y_true.push_back(*post.label);
    y_pred.push_back(by_id.at(post.id));
  }
  return report(confusion(y_true, y_pred, ds.scheme)).weighted_f1;
}

namespace {

std::vector<int> k_grid(int vocab_size) {
  std::vector<int> ks;
  for (int k = 1000; k < vocab_size; k *= 2) ks.push_back(k);
  ks.push_back(vocab_size);
  return ks;
}

std::string options_row(const TrainOptions& opt, int vocab_size, double wf1) {
  char buf[256];
  std::string params;
  if (opt.model_kind == "mnb") {
    params = "alpha=" + std::to_string(opt.mnb_alpha);
  } else if (opt.model_kind == "svm") {
    std::snprintf(buf, sizeof(buf), "lambda=%g epochs=%d seed=%llu",
                  opt.svm_lambda, opt.svm_epochs,
                  static_cast<unsigned long long>(opt.seed));
    params = buf;
  } else {
    params = "trees=" + std::to_string(opt.rf_trees);
  }
  int effective_k = opt.top_k > 0 ? std::min(opt.top_k, vocab_size) : vocab_size;
  std::snprintf(buf, sizeof(buf), "%s\t%d\t%s\t%.6f", opt.model_kind.c_str(),
                effective_k, params.c_str(), wf1);
  return buf;
}

}  // namespace

SweepResult sweep_pipeline(const Dataset& train, const Dataset& valid,
                           const PreprocessConfig& preprocess,
                           const std::optional<UnigramModel>& tokenizer,
                           const TrainOptions& base) {
  // Vocabulary size determines the top-k grid.
  auto feats = featurize_dataset(train, preprocess, tokenizer);
  int vocab_size = feats.vocab.size();

  std::vector<TrainOptions> grid;
  for (int k : k_grid(vocab_size)) {
    TrainOptions opt = base;
    opt.top_k = k;
    if (base.model_kind == "mnb") {
      for (double alpha : {0.1, 0.5, 1.0}) {
        opt.mnb_alpha = alpha;
        grid.push_back(opt);
      }
    } else if (base.model_kind == "svm") {
      for (double lambda : {1e-3, 1e-4, 1e-5}) {
        for (uint64_t seed_offset : {0ULL, 1ULL}) {
          opt.svm_lambda = lambda;
          opt.seed = base.seed + seed_offset;
          grid.push_back(opt);
        }
      }
    } else if (base.model_kind == "rf") {
      for (int trees : {50, 100, 200}) {
        opt.rf_trees = trees;
        grid.push_back(opt);
      }
    } else {
      throw ConfigError("unknown model kind: " + base.model_kind);
    }
  }

  SweepResult result;
  result.log_rows.push_back("model\ttop_k\tparams\tweighted_f1");
  for (const auto& opt : grid) {
    PipelineModel model = train_pipeline(train, preprocess, tokenizer, opt);
    double wf1 = validation_weighted_f1(model, valid);
    result.log_rows.push_back(options_row(opt, vocab_size, wf1));
    if (wf1 > result.best_weighted_f1) {
      result.best_weighted_f1 = wf1;
      result.best_model = std::move(model);
      result.best_options = opt;
    }
  }
  return result;
}

uint64_t derive_seed(uint64_t run_seed, std::string_view module_name) {
  uint64_t h = 0xCBF29CE484222325ULL ^ run_seed;
  for (char c : module_name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace cmof
