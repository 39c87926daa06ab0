// cmof: classical offensive-language-identification pipeline for
// code-mixed text. Subcommands cover dataset splitting, transfer dataset
// preparation, subword tokenizer training, model training and sweeps,
// prediction, evaluation and ensembling.
#include <filesystem>
#include <fstream>
#include <map>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cmof/corpus.hpp"
#include "cmof/ensemble.hpp"
#include "cmof/error.hpp"
#include "cmof/eval.hpp"
#include "cmof/pipeline.hpp"

namespace fs = std::filesystem;
using namespace cmof;

namespace {

struct PreprocessFlags {
  bool lowercase = true;
  bool strip_punctuation = true;
  bool strip_mentions = true;
  bool stopword_removal = true;
  std::string emoji = "remove";
  bool stem_english = true;
  std::string emoji_table;
  std::string stopword_file;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--lowercase,!--no-lowercase", lowercase, "Lowercase text");
    cmd->add_flag("--strip-punctuation,!--no-strip-punctuation",
                  strip_punctuation, "Strip punctuation and symbols");
    cmd->add_flag("--strip-mentions,!--no-strip-mentions", strip_mentions,
                  "Strip @-mentions");
    cmd->add_flag("--stopwords,!--no-stopwords", stopword_removal,
                  "Remove English stopwords");
    cmd->add_option("--emoji", emoji, "Emoji handling: keep|remove|describe")
        ->check(CLI::IsMember({"keep", "remove", "describe"}))
        ->capture_default_str();
    cmd->add_flag("--stem,!--no-stem", stem_english, "Stem English tokens");
    cmd->add_option("--emoji-table", emoji_table,
                    "Custom emoji description TSV (key<TAB>description)");
    cmd->add_option("--stopword-file", stopword_file,
                    "Custom stopword list, one token per line");
  }

  PreprocessConfig config() const {
    PreprocessConfig c;
    c.lowercase = lowercase;
    c.strip_punctuation = strip_punctuation;
    c.strip_mentions = strip_mentions;
    c.stopword_removal = stopword_removal;
    c.stem_english = stem_english;
    c.emoji_mode = emoji == "keep"      ? EmojiMode::Keep
                   : emoji == "describe" ? EmojiMode::Describe
                                         : EmojiMode::Remove;
    return c;
  }

  std::string describe() const {
    std::ostringstream out;
    out << "preprocess.lowercase = " << lowercase << '\n'
        << "preprocess.strip_punctuation = " << strip_punctuation << '\n'
        << "preprocess.strip_mentions = " << strip_mentions << '\n'
        << "preprocess.stopword_removal = " << stopword_removal << '\n'
        << "preprocess.emoji_mode = " << emoji << '\n'
        << "preprocess.stem_english = " << stem_english << '\n';
    return out.str();
  }
};

void write_run_config(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write resolved config: " + path);
  out << content;
}

// Preprocessed dataset text, honoring custom tables when given.
std::string apply_preprocess(const std::string& text,
                             const PreprocessFlags& flags) {
  static std::optional<EmojiTable> custom_emoji;
  static std::optional<StopwordList> custom_stopwords;
  const EmojiTable* emoji = &EmojiTable::builtin();
  const StopwordList* stopwords = &StopwordList::builtin();
  if (!flags.emoji_table.empty()) {
    if (!custom_emoji) custom_emoji = EmojiTable::from_tsv(flags.emoji_table);
    emoji = &*custom_emoji;
  }
  if (!flags.stopword_file.empty()) {
    if (!custom_stopwords) {
      custom_stopwords = StopwordList::from_file(flags.stopword_file);
    }
    stopwords = &*custom_stopwords;
  }
  return normalize(text, flags.config(), *emoji, *stopwords);
}

int run(int argc, char** argv) {
  CLI::App app{"classical offensive-language-identification pipeline"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value file");
  app.allow_config_extras(false);

  // ---- split ----
  auto* cmd_split = app.add_subcommand("split", "Split a dataset 8:1:1");
  std::string sp_input, sp_scheme = "tamil", sp_outdir;
  SplitSpec sp_spec;
  cmd_split->add_option("--input", sp_input, "Dataset TSV")->required();
  cmd_split->add_option("--scheme", sp_scheme, "Label scheme")
      ->check(CLI::IsMember({"tamil", "malayalam", "kannada", "combined"}));
  cmd_split->add_option("--outdir", sp_outdir, "Output directory")->required();
  cmd_split->add_option("--train-ratio", sp_spec.train)->capture_default_str();
  cmd_split->add_option("--valid-ratio", sp_spec.valid)->capture_default_str();
  cmd_split->add_option("--test-ratio", sp_spec.test)->capture_default_str();
  uint64_t sp_seed = 0;
  cmd_split->add_option("--seed", sp_seed)->capture_default_str();
  cmd_split->add_flag("--stratified,!--no-stratified", sp_spec.stratified,
                      "Stratify by label");

  // ---- transfer-prep ----
  auto* cmd_prep = app.add_subcommand(
      "transfer-prep", "Build the combined 5-label transfer dataset");
  std::string tp_olid, tp_output;
  std::vector<std::string> tp_tasks;
  cmd_prep->add_option("--olid", tp_olid, "OLID TSV");
  cmd_prep->add_option("--task", tp_tasks,
                       "Task dataset as scheme=path (repeatable)");
  cmd_prep->add_option("--output", tp_output, "Combined TSV")->required();

  // ---- train-tokenizer ----
  auto* cmd_tok = app.add_subcommand("train-tokenizer",
                                     "Train a unigram subword tokenizer");
  std::string tk_input, tk_scheme = "tamil", tk_output;
  bool tk_raw = false;
  TokenizerTrainConfig tk_config;
  PreprocessFlags tk_pre;
  cmd_tok->add_option("--input", tk_input, "Dataset TSV or raw text")->required();
  cmd_tok->add_option("--scheme", tk_scheme, "Label scheme for TSV input");
  cmd_tok->add_flag("--raw", tk_raw, "Input is one sentence per line");
  cmd_tok->add_option("--output", tk_output, "Tokenizer model file")->required();
  cmd_tok->add_option("--vocab-size", tk_config.target_vocab)
      ->capture_default_str();
  cmd_tok->add_option("--seed-max-piece-len", tk_config.seed_max_piece_len)
      ->capture_default_str();
  cmd_tok->add_option("--seed-max-vocab", tk_config.seed_max_vocab)
      ->capture_default_str();
  cmd_tok->add_option("--em-iterations", tk_config.em_iterations_per_round)
      ->capture_default_str();
  cmd_tok->add_option("--prune-keep-fraction", tk_config.prune_keep_fraction)
      ->capture_default_str();
  cmd_tok->add_option("--min-piece-count", tk_config.min_piece_count)
      ->capture_default_str();
  int tk_threads = static_cast<int>(std::thread::hardware_concurrency());
  cmd_tok->add_option("--threads", tk_threads)->capture_default_str();
  tk_pre.lowercase = true;
  tk_pre.strip_punctuation = true;
  tk_pre.strip_mentions = true;
  tk_pre.stopword_removal = false;
  tk_pre.stem_english = false;
  tk_pre.emoji = "remove";
  tk_pre.attach(cmd_tok);

  // ---- train / sweep ----
  auto add_train_options = [](CLI::App* cmd, std::string& train_path,
                              std::string& valid_path, std::string& scheme,
                              std::string& outdir, std::string& tokenizer_path,
                              TrainOptions& opt, PreprocessFlags& pre,
                              uint64_t& seed, int& depth) {
    cmd->add_option("--train", train_path, "Training TSV")->required();
    cmd->add_option("--valid", valid_path, "Validation TSV")->required();
    cmd->add_option("--scheme", scheme, "Label scheme")
        ->check(CLI::IsMember({"tamil", "malayalam", "kannada", "combined"}));
    cmd->add_option("--outdir", outdir, "Output directory")->required();
    cmd->add_option("--model", opt.model_kind, "Model kind: mnb|svm|rf")
        ->check(CLI::IsMember({"mnb", "svm", "rf"}))
        ->capture_default_str();
    cmd->add_option("--tokenizer", tokenizer_path,
                    "Use a trained subword tokenizer instead of words");
    cmd->add_option("--top-k", opt.top_k,
                    "Keep the k highest-MI features (0 = all)")
        ->capture_default_str();
    cmd->add_option("--alpha", opt.mnb_alpha, "MNB Laplace smoothing")
        ->capture_default_str();
    cmd->add_option("--lambda", opt.svm_lambda, "SVM L2 regularization")
        ->capture_default_str();
    cmd->add_option("--epochs", opt.svm_epochs, "SVM epochs")
        ->capture_default_str();
    cmd->add_flag("--class-weighting", opt.svm_class_weighting,
                  "Weight SVM hinge loss by inverse class frequency");
    cmd->add_option("--trees", opt.rf_trees, "Random forest size")
        ->capture_default_str();
    cmd->add_option("--max-depth", depth, "Random forest depth limit");
    cmd->add_option("--seed", seed)->capture_default_str();
    cmd->add_option("--threads", opt.threads)->capture_default_str();
    pre.attach(cmd);
  };

  auto* cmd_train = app.add_subcommand("train", "Train one model");
  std::string tr_train, tr_valid, tr_scheme = "tamil", tr_outdir, tr_tokenizer;
  TrainOptions tr_opt;
  tr_opt.threads = static_cast<int>(std::thread::hardware_concurrency());
  PreprocessFlags tr_pre;
  uint64_t tr_seed = 0;
  int tr_depth = -1;
  bool tr_sweep = false;
  add_train_options(cmd_train, tr_train, tr_valid, tr_scheme, tr_outdir,
                    tr_tokenizer, tr_opt, tr_pre, tr_seed, tr_depth);
  cmd_train->add_flag("--sweep", tr_sweep, "Grid-search hyperparameters");

  auto* cmd_sweep =
      app.add_subcommand("sweep", "Grid-search hyperparameters and keep the "
                                  "best validation weighted-F1 model");
  std::string sw_train, sw_valid, sw_scheme = "tamil", sw_outdir, sw_tokenizer;
  TrainOptions sw_opt;
  sw_opt.threads = static_cast<int>(std::thread::hardware_concurrency());
  PreprocessFlags sw_pre;
  uint64_t sw_seed = 0;
  int sw_depth = -1;
  add_train_options(cmd_sweep, sw_train, sw_valid, sw_scheme, sw_outdir,
                    sw_tokenizer, sw_opt, sw_pre, sw_seed, sw_depth);

  // ---- predict ----
  auto* cmd_predict = app.add_subcommand("predict", "Write a prediction file");
  std::string pr_model, pr_input, pr_scheme, pr_output;
  cmd_predict->add_option("--model", pr_model, "Pipeline model file")->required();
  cmd_predict->add_option("--input", pr_input, "Dataset TSV")->required();
  cmd_predict->add_option("--scheme", pr_scheme,
                          "Scheme of the input file (default: model scheme)");
  cmd_predict->add_option("--output", pr_output, "Prediction TSV")->required();

  // ---- evaluate ----
  auto* cmd_eval = app.add_subcommand("evaluate",
                                      "Score a prediction file against gold");
  std::string ev_pred, ev_gold, ev_scheme = "tamil";
  cmd_eval->add_option("--pred", ev_pred, "Prediction TSV")->required();
  cmd_eval->add_option("--gold", ev_gold, "Gold dataset TSV")->required();
  cmd_eval->add_option("--scheme", ev_scheme, "Label scheme")
      ->check(CLI::IsMember({"tamil", "malayalam", "kannada", "combined"}));

  // ---- ensemble ----
  auto* cmd_ens = app.add_subcommand("ensemble",
                                     "Average two or more prediction files");
  std::vector<std::string> en_inputs;
  std::vector<double> en_weights;
  std::string en_output;
  cmd_ens->add_option("--input", en_inputs, "Prediction TSVs")->required();
  cmd_ens->add_option("--weights", en_weights, "Member weights (default 1)");
  cmd_ens->add_option("--output", en_output, "Averaged prediction TSV")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*cmd_split) {
    const LabelScheme& scheme = scheme_by_name(sp_scheme);
    Dataset ds = load_dataset(sp_input, scheme);
    sp_spec.seed = derive_seed(sp_seed, "corpus.split");
    auto parts = split(ds, sp_spec);
    fs::create_directories(sp_outdir);
    save_dataset(parts[0], sp_outdir + "/train.tsv");
    save_dataset(parts[1], sp_outdir + "/valid.tsv");
    save_dataset(parts[2], sp_outdir + "/test.tsv");
    std::ostringstream cfg;
    cfg << "command = split\ninput = " << sp_input << "\nscheme = " << sp_scheme
        << "\ntrain_ratio = " << sp_spec.train
        << "\nvalid_ratio = " << sp_spec.valid
        << "\ntest_ratio = " << sp_spec.test << "\nseed = " << sp_seed
        << "\nstratified = " << sp_spec.stratified << '\n';
    write_run_config(sp_outdir + "/run_config.txt", cfg.str());
    std::cout << "train=" << parts[0].size() << " valid=" << parts[1].size()
              << " test=" << parts[2].size() << '\n';
    return 0;
  }

  if (*cmd_prep) {
    std::vector<Dataset> inputs;
    if (!tp_olid.empty()) inputs.push_back(load_olid(tp_olid));
    for (const auto& spec : tp_tasks) {
      size_t eq = spec.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("--task expects scheme=path, got " + spec);
      }
      inputs.push_back(load_dataset(spec.substr(eq + 1),
                                    scheme_by_name(spec.substr(0, eq))));
    }
    if (inputs.empty()) {
      throw ConfigError("transfer-prep needs --olid and/or --task inputs");
    }
    Dataset combined = combine_for_transfer(inputs);
    save_dataset(combined, tp_output);
    std::ostringstream cfg;
    cfg << "command = transfer-prep\nolid = " << tp_olid << '\n';
    for (const auto& t : tp_tasks) cfg << "task = " << t << '\n';
    cfg << "output = " << tp_output << '\n';
    write_run_config(tp_output + ".run_config.txt", cfg.str());
    std::cout << "combined=" << combined.size() << '\n';
    return 0;
  }

  if (*cmd_tok) {
    std::vector<std::string> corpus;
    if (tk_raw) {
      std::ifstream in(tk_input);
      if (!in) throw DataError("cannot open corpus: " + tk_input);
      std::string line;
      while (std::getline(in, line)) corpus.push_back(line);
    } else {
      Dataset ds = load_dataset(tk_input, scheme_by_name(tk_scheme));
      for (const auto& p : ds.posts) corpus.push_back(p.text);
    }
    for (auto& line : corpus) line = apply_preprocess(line, tk_pre);
    tk_config.threads = tk_threads;
    UnigramModel model = train_unigram(corpus, tk_config);
    model.save(tk_output);
    std::ostringstream cfg;
    cfg << "command = train-tokenizer\ninput = " << tk_input
        << "\nraw = " << tk_raw << "\nvocab_size = " << tk_config.target_vocab
        << "\nseed_max_piece_len = " << tk_config.seed_max_piece_len
        << "\nem_iterations = " << tk_config.em_iterations_per_round
        << "\nprune_keep_fraction = " << tk_config.prune_keep_fraction
        << "\nmin_piece_count = " << tk_config.min_piece_count << '\n'
        << tk_pre.describe();
    write_run_config(tk_output + ".run_config.txt", cfg.str());
    std::cout << "pieces=" << model.size() << '\n';
    return 0;
  }

  auto run_training = [&](bool do_sweep, const std::string& train_path,
                          const std::string& valid_path,
                          const std::string& scheme_name,
                          const std::string& outdir,
                          const std::string& tokenizer_path, TrainOptions opt,
                          const PreprocessFlags& pre, uint64_t seed,
                          int depth) {
    if (depth >= 0) opt.rf_max_depth = depth;
    const LabelScheme& scheme = scheme_by_name(scheme_name);
    Dataset train_ds = load_dataset(train_path, scheme);
    Dataset valid_ds = load_dataset(valid_path, scheme);
    std::optional<UnigramModel> tokenizer;
    if (!tokenizer_path.empty()) tokenizer = UnigramModel::load(tokenizer_path);
    opt.seed = derive_seed(seed, "models." + opt.model_kind);

    fs::create_directories(outdir);
    PreprocessConfig pconfig = pre.config();
    double wf1;
    if (do_sweep) {
      SweepResult result =
          sweep_pipeline(train_ds, valid_ds, pconfig, tokenizer, opt);
      result.best_model.save(outdir + "/model.cmof");
      std::ofstream log(outdir + "/sweep_log.tsv");
      for (const auto& row : result.log_rows) log << row << '\n';
      wf1 = result.best_weighted_f1;
      opt = result.best_options;
    } else {
      PipelineModel model = train_pipeline(train_ds, pconfig, tokenizer, opt);
      model.save(outdir + "/model.cmof");
      wf1 = validation_weighted_f1(model, valid_ds);
    }
    std::ostringstream cfg;
    cfg << "command = " << (do_sweep ? "sweep" : "train")
        << "\ntrain = " << train_path << "\nvalid = " << valid_path
        << "\nscheme = " << scheme_name << "\nmodel = " << opt.model_kind
        << "\ntokenizer = " << tokenizer_path << "\ntop_k = " << opt.top_k
        << "\nalpha = " << opt.mnb_alpha << "\nlambda = " << opt.svm_lambda
        << "\nepochs = " << opt.svm_epochs << "\ntrees = " << opt.rf_trees
        << "\nmax_depth = " << (opt.rf_max_depth ? *opt.rf_max_depth : -1)
        << "\nseed = " << seed << "\nthreads = " << opt.threads << '\n'
        << pre.describe();
    write_run_config(outdir + "/run_config.txt", cfg.str());
    char buf[64];
    std::snprintf(buf, sizeof(buf), "weighted_f1=%.6f", wf1);
    std::cout << buf << '\n';
  };

  if (*cmd_train) {
    run_training(tr_sweep, tr_train, tr_valid, tr_scheme, tr_outdir,
                 tr_tokenizer, tr_opt, tr_pre, tr_seed, tr_depth);
    return 0;
  }
  if (*cmd_sweep) {
    run_training(true, sw_train, sw_valid, sw_scheme, sw_outdir, sw_tokenizer,
                 sw_opt, sw_pre, sw_seed, sw_depth);
    return 0;
  }

  if (*cmd_predict) {
    PipelineModel model = PipelineModel::load(pr_model);
    const LabelScheme& scheme = pr_scheme.empty()
                                    ? model_scheme(model.classifier)
                                    : scheme_by_name(pr_scheme);
    Dataset ds = load_dataset(pr_input, scheme);
    PredictionSet preds = predict_dataset(model, ds, fs::path(pr_model).stem().string());
    save_predictions(preds, pr_output);
    std::ostringstream cfg;
    cfg << "command = predict\nmodel = " << pr_model << "\ninput = " << pr_input
        << "\noutput = " << pr_output << '\n';
    write_run_config(pr_output + ".run_config.txt", cfg.str());
    std::cout << "rows=" << preds.rows.size() << '\n';
    return 0;
  }

  if (*cmd_eval) {
    const LabelScheme& scheme = scheme_by_name(ev_scheme);
    Dataset gold = load_dataset(ev_gold, scheme);
    PredictionSet preds = load_predictions(ev_pred, &scheme);
    std::map<std::string, Label> pred_by_id;
    for (const auto& [id, label] : decode(preds)) pred_by_id.emplace(id, label);
    std::vector<Label> y_true, y_pred;
    for (const auto& post : gold.posts) {
      if (!post.label) {
        throw DataError("gold post \"" + post.id + "\" has no label");
      }
      auto it = pred_by_id.find(post.id);
      if (it == pred_by_id.end()) {
        throw DataError("no prediction for post id \"" + post.id + "\"");
      }
      y_true.push_back(*post.label);
      y_pred.push_back(it->second);
    }
    EvalReport rep = report(confusion(y_true, y_pred, scheme));
    std::cout << format_report(rep) << '\n' << format_report_kv(rep);
    return 0;
  }

  if (*cmd_ens) {
    if (en_inputs.size() < 2) {
      throw ConfigError("ensemble needs at least 2 prediction files");
    }
    std::vector<PredictionSet> sets;
    for (const auto& path : en_inputs) sets.push_back(load_predictions(path));
    EnsembleConfig config;
    for (const auto& s : sets) config.members.push_back(s.model_id);
    config.weights = en_weights;
    PredictionSet avg = average(sets, config);
    save_predictions(avg, en_output);
    std::ostringstream cfg;
    cfg << "command = ensemble\n";
    for (const auto& p : en_inputs) cfg << "input = " << p << '\n';
    for (double w : en_weights) cfg << "weight = " << w << '\n';
    cfg << "output = " << en_output << '\n';
    write_run_config(en_output + ".run_config.txt", cfg.str());
    std::cout << "rows=" << avg.rows.size() << '\n';
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
