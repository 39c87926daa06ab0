#pragma once

#include <string>
#include <vector>

#include "cmof/label.hpp"

namespace cmof {

struct ConfusionMatrix {
  LabelScheme scheme;
  // counts[true][predicted]
  std::vector<std::vector<long>> counts;

  long total() const;
};

struct ClassMetrics {
  Label label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long support = 0;
};

struct EvalReport {
  std::vector<ClassMetrics> per_class;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
};

ConfusionMatrix confusion(const std::vector<Label>& y_true,
                          const std::vector<Label>& y_pred,
                          const LabelScheme& scheme);

// 0/0 divisions give 0; zero-support classes are excluded from the
// weighted and macro averages.
EvalReport report(const ConfusionMatrix& cm);

// Human-readable table.
std::string format_report(const EvalReport& rep);
// Machine-readable `key=value` lines (weighted_f1=..., accuracy=..., ...).
std::string format_report_kv(const EvalReport& rep);

}  // namespace cmof
