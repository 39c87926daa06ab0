// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. The dataset-dependent score-reproduction criterion runs only
// when CMOF_DATA_DIR points at the shared-task TSVs; otherwise it is
// reported as SKIP (the data is not redistributable with this repository).
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cmof/corpus.hpp"
#include "cmof/ensemble.hpp"
#include "cmof/eval.hpp"
#include "cmof/pipeline.hpp"

using namespace cmof;

namespace {

int g_failures = 0;

void check(const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << ": " << name;
  if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
  std::cout << '\n';
  if (!ok) ++g_failures;
}

void skip(const std::string& name, const std::string& why) {
  std::cout << "SKIP: " << name << " (" << why << ")\n";
}

const LabelScheme& tamil() { return scheme_by_name("tamil"); }

CountVector cv(std::vector<std::pair<int, int>> entries, int vocab) {
  CountVector out;
  out.entries = std::move(entries);
  out.vocab_size = vocab;
  return out;
}

// ---------------------------------------------------------------------------

void criterion_reference_scores() {
  const std::string name = "reference weighted-F1 reproduction";
  const char* dir = std::getenv("CMOF_DATA_DIR");
  if (!dir) {
    skip(name, "set CMOF_DATA_DIR to the shared-task dataset directory");
    return;
  }
  struct Target {
    const char* file_stem;
    const char* scheme;
    double svm, mnb, rf;
  };
  const Target targets[] = {
      {"tamil", "tamil", 0.74, 0.74, 0.69},
      {"malayalam", "malayalam", 0.95, 0.94, 0.94},
      {"kannada", "kannada", 0.65, 0.64, 0.62},
  };
  for (const Target& t : targets) {
    std::string train_p = std::string(dir) + "/" + t.file_stem + "_train.tsv";
    std::string valid_p = std::string(dir) + "/" + t.file_stem + "_valid.tsv";
    if (!std::filesystem::exists(train_p) ||
        !std::filesystem::exists(valid_p)) {
      skip(name + std::string(" [") + t.file_stem + "]",
           "missing " + train_p + " or " + valid_p);
      continue;
    }
    Dataset train = load_dataset(train_p, scheme_by_name(t.scheme));
    Dataset valid = load_dataset(valid_p, scheme_by_name(t.scheme));
    struct Run {
      const char* kind;
      double target;
    };
    const Run runs[] = {{"svm", t.svm}, {"mnb", t.mnb}, {"rf", t.rf}};
    for (const Run& r : runs) {
      TrainOptions base;
      base.model_kind = r.kind;
      SweepResult sweep = sweep_pipeline(
          train, valid, PreprocessConfig::classical(), std::nullopt, base);
      std::ostringstream detail;
      detail << "got " << sweep.best_weighted_f1 << ", want " << r.target
             << " +- 0.05";
      check(name + std::string(" [") + t.file_stem + " " + r.kind + "]",
            std::abs(sweep.best_weighted_f1 - r.target) <= 0.05,
            detail.str());
    }
  }
}

// ---------------------------------------------------------------------------

void criterion_ensemble() {
  std::mt19937 rng(1);
  PredictionSet s;
  s.model_id = "m";
  s.scheme = scheme_by_name("combined");
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXd v(5);
    double sum = 0.0;
    for (int c = 0; c < 5; ++c) {
      v(c) = 1 + rng() % 50;
      sum += v(c);
    }
    v /= sum;
    s.rows.emplace_back("p" + std::to_string(i), ProbDist{s.scheme, v});
  }
  PredictionSet avg = average({s, s, s});
  double max_err = 0.0;
  for (size_t i = 0; i < s.rows.size(); ++i) {
    max_err = std::max(max_err, (avg.rows[i].second.values -
                                 s.rows[i].second.values)
                                    .cwiseAbs()
                                    .maxCoeff());
  }
  check("ensemble: triple self-average reproduces input within 1e-15",
        max_err <= 1e-15, "max error " + std::to_string(max_err));

  PredictionSet a = s, b = s;
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXd one = Eigen::VectorXd::Zero(5), two = Eigen::VectorXd::Zero(5);
    one(i % 5) = 1.0;
    two((i + 1) % 5) = 1.0;
    a.rows[i].second.values = one;
    b.rows[i].second.values = two;
  }
  PredictionSet mean = average({a, b});
  bool exact = true;
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXd want =
        (a.rows[i].second.values + b.rows[i].second.values) / 2.0;
    if (mean.rows[i].second.values != want) exact = false;
  }
  check("ensemble: disjoint one-hot sets average to exact arithmetic means",
        exact);
}

// ---------------------------------------------------------------------------

double mi_oracle(const std::vector<CountVector>& docs,
                 const std::vector<Label>& labels, int token,
                 const LabelScheme& scheme) {
  int n = static_cast<int>(docs.size());
  std::vector<std::vector<int>> table(2, std::vector<int>(scheme.size(), 0));
  for (int d = 0; d < n; ++d) {
    table[docs[d].count_at(token) > 0][scheme.index_of(labels[d])]++;
  }
  double mi = 0.0;
  for (int u = 0; u < 2; ++u) {
    for (int c = 0; c < scheme.size(); ++c) {
      if (table[u][c] == 0) continue;
      double puc = static_cast<double>(table[u][c]) / n;
      double pu = 0.0, pc = 0.0;
      for (int cc = 0; cc < scheme.size(); ++cc) pu += table[u][cc];
      for (int uu = 0; uu < 2; ++uu) pc += table[uu][c];
      mi += puc * std::log(puc / (pu / n * pc / n));
    }
  }
  return std::max(mi, 0.0);
}

void criterion_mi() {
  std::mt19937 rng(2);
  bool oracle_ok = true;
  std::string detail;
  for (int trial = 0; trial < 200 && oracle_ok; ++trial) {
    int n_docs = 2 + rng() % 19;
    int n_tokens = 1 + rng() % 6;
    int n_classes = 2 + rng() % 2;
    std::vector<CountVector> docs;
    std::vector<Label> labels;
    for (int d = 0; d < n_docs; ++d) {
      std::vector<std::pair<int, int>> e;
      for (int t = 0; t < n_tokens; ++t) {
        if (rng() % 2) e.emplace_back(t, 1);
      }
      docs.push_back(cv(e, n_tokens));
      labels.push_back(static_cast<Label>(rng() % n_classes));
    }
    MiScores scores = mutual_information(docs, labels, tamil());
    for (int t = 0; t < n_tokens; ++t) {
      double want = mi_oracle(docs, labels, t, tamil());
      if (std::abs(scores.values[t] - want) > 1e-12) {
        oracle_ok = false;
        detail = "trial " + std::to_string(trial);
        break;
      }
    }
  }
  check("MI: matches brute-force contingency oracle on 200 fixtures within "
        "1e-12",
        oracle_ok, detail);

  std::vector<CountVector> constant = {cv({{0, 1}}, 1), cv({{0, 1}}, 1),
                                       cv({{0, 1}}, 1), cv({{0, 1}}, 1)};
  std::vector<Label> two_classes = {Label::NotOffensive, Label::NotOffensive,
                                    Label::OffensiveUntargeted,
                                    Label::OffensiveUntargeted};
  check("MI: constant-presence token scores exactly 0",
        mutual_information(constant, two_classes, tamil()).values[0] == 0.0);

  std::vector<CountVector> indicator = {cv({{0, 1}}, 1), cv({{0, 1}}, 1),
                                        cv({}, 1), cv({}, 1)};
  double got = mutual_information(indicator, two_classes, tamil()).values[0];
  check("MI: perfect two-class indicator scores ln 2 within 1e-12",
        std::abs(got - std::log(2.0)) <= 1e-12);
}

// ---------------------------------------------------------------------------

Eigen::VectorXd mnb_oracle(const std::vector<CountVector>& docs,
                           const std::vector<Label>& labels,
                           const CountVector& query, double alpha, int V,
                           const LabelScheme& scheme) {
  int C = scheme.size();
  std::vector<double> prior(C, 0.0);
  std::vector<std::vector<double>> counts(C, std::vector<double>(V, 0.0));
  for (size_t d = 0; d < docs.size(); ++d) {
    int c = scheme.index_of(labels[d]);
    prior[c] += 1.0;
    for (auto [f, n] : docs[d].entries) counts[c][f] += n;
  }
  Eigen::VectorXd joint = Eigen::VectorXd::Zero(C);
  for (int c = 0; c < C; ++c) {
    if (prior[c] == 0.0) continue;
    double p = prior[c] / docs.size();
    double total = 0.0;
    for (int f = 0; f < V; ++f) total += counts[c][f];
    for (auto [f, n] : query.entries) {
      for (int i = 0; i < n; ++i) {
        p *= (counts[c][f] + alpha) / (total + alpha * V);
      }
    }
    joint(c) = p;
  }
  return joint / joint.sum();
}

void criterion_mnb() {
  std::mt19937 rng(3);
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 2000 && ok; ++trial) {
    int V = 1 + rng() % 5;
    int C = 2 + rng() % 2;
    int n = 2 + rng() % 9;
    std::vector<CountVector> docs;
    std::vector<Label> labels;
    for (int d = 0; d < n; ++d) {
      std::vector<std::pair<int, int>> e;
      for (int f = 0; f < V; ++f) {
        int c = rng() % 3;
        if (c) e.emplace_back(f, c);
      }
      docs.push_back(cv(e, V));
      labels.push_back(static_cast<Label>(rng() % C));
    }
    if (std::set<Label>(labels.begin(), labels.end()).size() < 2) continue;
    MnbModel m = train_mnb(docs, labels, tamil(), 1.0);
    std::vector<std::pair<int, int>> qe;
    for (int f = 0; f < V; ++f) {
      int c = rng() % 3;
      if (c) qe.emplace_back(f, c);
    }
    CountVector query = cv(qe, V);
    Eigen::VectorXd want = mnb_oracle(docs, labels, query, 1.0, V, tamil());
    ProbDist got = predict_mnb(m, query);
    if ((got.values - want).cwiseAbs().maxCoeff() > 1e-12) {
      ok = false;
      detail = "trial " + std::to_string(trial);
    }
  }
  check("MNB: posteriors match brute-force Bayes on bounded fixtures (V<=5, "
        "C<=3, docs<=10) within 1e-12",
        ok, detail);
}

// ---------------------------------------------------------------------------

double brute_force_best(const UnigramModel& m, const std::string& s) {
  size_t n = s.size();
  double best = -HUGE_VAL;
  for (size_t mask = 0; mask < (size_t{1} << (n - 1)); ++mask) {
    double lp = 0.0;
    size_t start = 0;
    bool valid = true;
    for (size_t i = 0; i < n; ++i) {
      bool at_cut = i + 1 == n || (mask >> i) & 1;
      if (!at_cut) continue;
      auto p = m.log_prob(s.substr(start, i + 1 - start));
      if (!p) {
        valid = false;
        break;
      }
      lp += *p;
      start = i + 1;
    }
    if (valid) best = std::max(best, lp);
  }
  return best;
}

void criterion_tokenizer() {
  std::mt19937 rng(4);
  bool viterbi_ok = true;
  std::string detail;
  for (int trial = 0; trial < 1000 && viterbi_ok; ++trial) {
    std::vector<std::string> candidates = {"a", "b", "ab", "ba", "aba"};
    std::vector<std::pair<std::string, double>> pieces;
    double total = 0.0;
    for (const auto& c : candidates) {
      if (c.size() == 1 || rng() % 2) {
        double w = 1.0 + rng() % 9;
        pieces.emplace_back(c, w);
        total += w;
      }
    }
    for (auto& [p, w] : pieces) w = std::log(w / total);
    UnigramModel m(pieces);
    size_t len = 1 + rng() % 10;
    std::string s;
    for (size_t i = 0; i < len; ++i) s += (rng() % 2) ? 'a' : 'b';
    auto seg = segment(m, s, false);
    double got = 0.0;
    for (const auto& piece : seg) got += *m.log_prob(piece);
    if (std::abs(got - brute_force_best(m, s)) > 1e-12) {
      viterbi_ok = false;
      detail = "string " + s;
    }
  }
  check("tokenizer: Viterbi equals exhaustive argmax on 1000 cases",
        viterbi_ok, detail);

  // EM monotonicity: run explicit EM iterations via the exposed
  // expected-count routine and watch the corpus log-likelihood.
  bool monotone = true;
  for (int trial = 0; trial < 50 && monotone; ++trial) {
    std::vector<std::string> corpus;
    int n = 3 + rng() % 6;
    for (int i = 0; i < n; ++i) {
      std::string s;
      int len = 2 + rng() % 6;
      for (int j = 0; j < len; ++j) s += 'a' + rng() % 3;
      corpus.push_back(s);
    }
    // Initial model: normalized substring counts.
    std::map<std::string, double> counts;
    for (const auto& s : corpus) {
      for (size_t i = 0; i < s.size(); ++i) {
        for (size_t l = 1; l <= 4 && i + l <= s.size(); ++l) {
          counts[s.substr(i, l)] += 1.0;
        }
      }
    }
    double total = 0.0;
    for (const auto& [p, c] : counts) total += c;
    std::vector<std::pair<std::string, double>> pieces;
    for (const auto& [p, c] : counts) {
      pieces.emplace_back(p, std::log(c / total));
    }
    UnigramModel model(pieces);
    double prev = corpus_log_likelihood(model, corpus);
    for (int iter = 0; iter < 5; ++iter) {
      std::map<std::string, double> expected;
      for (const auto& s : corpus) {
        for (const auto& [p, c] : expected_piece_counts(model, s)) {
          expected[p] += c;
        }
      }
      double mass = 0.0;
      for (const auto& [p, c] : expected) mass += c;
      std::vector<std::pair<std::string, double>> next;
      for (const auto& [p, lp] : model.pieces()) {
        auto it = expected.find(p);
        double c = it == expected.end() ? 0.0 : it->second;
        // Keep unused pieces at negligible mass so the vocabulary is stable.
        next.emplace_back(p, std::max(c / mass, 1e-12));
      }
      double renorm = 0.0;
      for (auto& [p, w] : next) renorm += w;
      for (auto& [p, w] : next) w = std::log(w / renorm);
      model = UnigramModel(next);
      double ll = corpus_log_likelihood(model, corpus);
      if (ll < prev - 1e-9) {
        monotone = false;
        detail = "trial " + std::to_string(trial) + " iter " +
                 std::to_string(iter);
        break;
      }
      prev = ll;
    }
  }
  check("tokenizer: EM log-likelihood non-decreasing within 1e-9 on 50 "
        "corpora",
        monotone, detail);

  // Coverage + runtime on a 1000-sentence corpus, target_vocab 500.
  std::vector<std::string> corpus;
  std::mt19937 crng(5);
  const std::vector<std::string> syllables = {"ka", "ta", "pa", "na", "la",
                                              "ma", "di", "ri", "su", "vu"};
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    int words = 2 + crng() % 5;
    for (int w = 0; w < words; ++w) {
      if (w) s += ' ';
      int syl = 1 + crng() % 4;
      for (int j = 0; j < syl; ++j) s += syllables[crng() % syllables.size()];
    }
    corpus.push_back(s);
  }
  TokenizerTrainConfig cfg;
  cfg.target_vocab = 500;
  cfg.threads = 4;
  auto start = std::chrono::steady_clock::now();
  UnigramModel trained = train_unigram(corpus, cfg);
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  bool covered = true;
  for (const auto& s : corpus) {
    try {
      segment(trained, s, false);
    } catch (...) {
      covered = false;
      break;
    }
  }
  check("tokenizer: 1000-sentence corpus at target_vocab 500 segments every "
        "training sentence",
        covered);
  check("tokenizer: training completes in under 30 s",
        secs < 30.0, std::to_string(secs) + " s");
}

// ---------------------------------------------------------------------------

void criterion_svm() {
  std::vector<CountVector> docs;
  std::vector<Label> labels;
  for (int i = 0; i < 5; ++i) {
    docs.push_back(cv({{i % 3, 1 + i % 2}}, 6));
    labels.push_back(Label::NotOffensive);
    docs.push_back(cv({{3 + i % 3, 1 + i % 2}}, 6));
    labels.push_back(Label::OffensiveUntargeted);
  }
  SvmModel m = train_svm(docs, labels, tamil(), 0.01, 50, 7);
  bool all_correct = true;
  for (size_t d = 0; d < docs.size(); ++d) {
    all_correct &= predict_svm(m, docs[d]).argmax() == labels[d];
  }
  check("SVM: 100% training accuracy on the separable 10-doc set within 50 "
        "epochs",
        all_correct);

  SvmModel again = train_svm(docs, labels, tamil(), 0.01, 50, 7);
  check("SVM: bitwise-identical weights across repeated seeded runs",
        m.weights == again.weights && m.bias == again.bias);

  std::mt19937 rng(6);
  bool shift_ok = true;
  for (int trial = 0; trial < 100 && shift_ok; ++trial) {
    Eigen::VectorXd margins = Eigen::VectorXd::Random(6) * 8;
    double c = (static_cast<double>(rng() % 2000) - 1000) / 50.0;
    Eigen::VectorXd pa = softmax(margins);
    Eigen::VectorXd pb = softmax(margins.array() + c);
    int ia, ib;
    pa.maxCoeff(&ia);
    pb.maxCoeff(&ib);
    shift_ok = ia == ib;
  }
  check("SVM: softmax shift invariance of decoded labels on 100 margin "
        "vectors",
        shift_ok);
}

// ---------------------------------------------------------------------------

void criterion_rf() {
  std::mt19937 rng(8);
  std::vector<CountVector> docs;
  std::vector<Label> labels;
  for (int i = 0; i < 30; ++i) {
    std::vector<std::pair<int, int>> e;
    for (int f = 0; f < 5; ++f) {
      int c = rng() % 4;
      if (c) e.emplace_back(f, c);
    }
    docs.push_back(cv(e, 5));
    labels.push_back(static_cast<Label>(rng() % 3));
  }
  RfModel serial = train_rf(docs, labels, tamil(), 12, 6, 77, 1);
  RfModel parallel = train_rf(docs, labels, tamil(), 12, 6, 77, 4);
  bool identical = serial.trees.size() == parallel.trees.size();
  for (size_t t = 0; identical && t < serial.trees.size(); ++t) {
    identical = serial.trees[t].nodes.size() == parallel.trees[t].nodes.size();
    for (size_t n = 0; identical && n < serial.trees[t].nodes.size(); ++n) {
      const RfNode& a = serial.trees[t].nodes[n];
      const RfNode& b = parallel.trees[t].nodes[n];
      identical = a.feature == b.feature && a.threshold == b.threshold &&
                  a.left == b.left && a.right == b.right &&
                  a.histogram == b.histogram;
    }
  }
  check("RF: identical forests serial vs parallel", identical);

  // Distinct-support fixture with repeated copies so the bootstrap sample
  // contains every support; a single unrestricted tree then isolates each.
  std::vector<CountVector> distinct;
  std::vector<Label> dlabels;
  for (int copy = 0; copy < 10; ++copy) {
    for (int c = 0; c < 4; ++c) {
      distinct.push_back(cv({{c, 1}}, 4));
      dlabels.push_back(static_cast<Label>(c));
    }
  }
  RfModel single = train_rf(distinct, dlabels, tamil(), 1, std::nullopt, 15);
  bool overfit = true;
  for (size_t d = 0; d < distinct.size(); ++d) {
    overfit &= predict_rf(single, distinct[d]).argmax() == dlabels[d];
  }
  check("RF: single unrestricted tree reaches 100% on the distinct-support "
        "fixture",
        overfit);
}

// ---------------------------------------------------------------------------

void criterion_metrics() {
  std::mt19937 rng(9);
  bool perfect = true;
  for (int trial = 0; trial < 100 && perfect; ++trial) {
    std::vector<Label> y;
    int n = 1 + rng() % 50;
    for (int i = 0; i < n; ++i) y.push_back(static_cast<Label>(rng() % 6));
    EvalReport rep = report(confusion(y, y, tamil()));
    perfect = rep.weighted_f1 == 1.0 && rep.accuracy == 1.0;
  }
  check("metrics: report(confusion(y,y)) = 1.0 exactly on 100 labelings",
        perfect);

  std::vector<Label> t = {Label::NotOffensive, Label::NotOffensive,
                          Label::NotOffensive, Label::OffensiveUntargeted};
  std::vector<Label> p = {Label::NotOffensive, Label::NotOffensive,
                          Label::NotOffensive,
                          Label::OffensiveTargetedIndividual};
  EvalReport rep = report(confusion(t, p, tamil()));
  check("metrics: supports (3,1) with F1s (1,0) give weighted-F1 0.75 within "
        "1e-12",
        std::abs(rep.weighted_f1 - 0.75) <= 1e-12);
}

}  // namespace

int main() {
  criterion_reference_scores();
  criterion_ensemble();
  criterion_mi();
  criterion_mnb();
  criterion_tokenizer();
  criterion_svm();
  criterion_rf();
  criterion_metrics();
  if (g_failures) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
