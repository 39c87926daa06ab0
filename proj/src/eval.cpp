#include "cmof/eval.hpp"

#include <cstdio>
#include <sstream>

#include "cmof/error.hpp"

namespace cmof {

long ConfusionMatrix::total() const {
  long t = 0;
  for (const auto& row : counts) {
    for (long c : row) t += c;
  }
  return t;
}

ConfusionMatrix confusion(const std::vector<Label>& y_true,
                          const std::vector<Label>& y_pred,
                          const LabelScheme& scheme) {
  if (y_true.size() != y_pred.size()) {
    throw DataError("confusion: " + std::to_string(y_true.size()) +
                    " gold labels vs " + std::to_string(y_pred.size()) +
                    " predictions");
  }
  if (y_true.empty()) throw DataError("confusion: no labels");
  ConfusionMatrix cm{scheme,
                     std::vector<std::vector<long>>(
                         scheme.size(), std::vector<long>(scheme.size(), 0))};
  for (size_t i = 0; i < y_true.size(); ++i) {
    int t = scheme.index_of(y_true[i]);
    int p = scheme.index_of(y_pred[i]);
    if (t < 0 || p < 0) {
      throw DataError("confusion: label outside scheme at row " +
                      std::to_string(i));
    }
    ++cm.counts[t][p];
  }
  return cm;
}

EvalReport report(const ConfusionMatrix& cm) {
  int n = cm.scheme.size();
  EvalReport rep;
  long total = cm.total();
  long diag = 0;
  double weighted_sum = 0.0, macro_sum = 0.0;
  long support_sum = 0;
  int supported_classes = 0;

  for (int c = 0; c < n; ++c) {
    ClassMetrics m;
    m.label = cm.scheme.labels[c];
    long tp = cm.counts[c][c];
    long fn = 0, fp = 0;
    for (int k = 0; k < n; ++k) {
      if (k != c) {
        fn += cm.counts[c][k];
        fp += cm.counts[k][c];
      }
    }
    m.support = tp + fn;
    m.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
    m.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    diag += tp;
    if (m.support > 0) {
      weighted_sum += static_cast<double>(m.support) * m.f1;
      support_sum += m.support;
      macro_sum += m.f1;
      ++supported_classes;
    }
    rep.per_class.push_back(m);
  }
  rep.accuracy = total > 0 ? static_cast<double>(diag) / total : 0.0;
  rep.weighted_f1 = support_sum > 0 ? weighted_sum / support_sum : 0.0;
  rep.macro_f1 = supported_classes > 0 ? macro_sum / supported_classes : 0.0;
  return rep;
}

std::string format_report(const EvalReport& rep) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-32s %9s %9s %9s %9s\n", "class",
                "precision", "recall", "f1", "support");
  out << line;
  for (const auto& m : rep.per_class) {
    std::snprintf(line, sizeof(line), "%-32s %9.4f %9.4f %9.4f %9ld\n",
                  std::string(to_string(m.label)).c_str(), m.precision,
                  m.recall, m.f1, m.support);
    out << line;
  }
  std::snprintf(line, sizeof(line),
                "\naccuracy=%.4f  macro_f1=%.4f  weighted_f1=%.4f\n",
                rep.accuracy, rep.macro_f1, rep.weighted_f1);
  out << line;
  return out.str();
}

std::string format_report_kv(const EvalReport& rep) {
  std::ostringstream out;
  char buf[64];
  auto kv = [&](const std::string& key, double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << key << '=' << buf << '\n';
  };
  kv("accuracy", rep.accuracy);
  kv("macro_f1", rep.macro_f1);
  kv("weighted_f1", rep.weighted_f1);
  for (const auto& m : rep.per_class) {
    std::string name(to_string(m.label));
    for (auto& c : name) c = static_cast<char>(std::tolower(c));
    kv("f1_" + name, m.f1);
  }
  return out.str();
}

}  // namespace cmof
