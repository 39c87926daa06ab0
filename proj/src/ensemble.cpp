#include "cmof/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cmof/error.hpp"

namespace cmof {

namespace {

bool same_labels(const LabelScheme& a, const LabelScheme& b) {
  return a.labels == b.labels;
}

std::string file_stem(const std::string& path) {
  size_t slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  size_t dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

}  // namespace

PredictionSet average(const std::vector<PredictionSet>& sets,
                      const EnsembleConfig& config) {
  if (sets.empty()) throw DataError("ensemble: no prediction sets");
  std::vector<double> weights = config.weights;
  if (weights.empty()) weights.assign(sets.size(), 1.0);
  if (weights.size() != sets.size()) {
    throw DataError("ensemble: " + std::to_string(weights.size()) +
                    " weights for " + std::to_string(sets.size()) + " members");
  }
  double weight_sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ConfigError("ensemble weights must be non-negative");
    weight_sum += w;
  }
  if (weight_sum <= 0.0) throw ConfigError("ensemble weights sum to zero");

  const PredictionSet& first = sets[0];
  for (const auto& s : sets) {
    if (!same_labels(s.scheme, first.scheme)) {
      throw DataError("ensemble: scheme mismatch between \"" + first.model_id +
                      "\" and \"" + s.model_id + "\"");
    }
    if (s.rows.size() != first.rows.size()) {
      throw DataError("ensemble: member \"" + s.model_id + "\" has " +
                      std::to_string(s.rows.size()) + " rows, expected " +
                      std::to_string(first.rows.size()));
    }
  }

  // Align by post id, not row order.
  std::vector<std::unordered_map<std::string, size_t>> by_id(sets.size());
  for (size_t m = 1; m < sets.size(); ++m) {
    for (size_t r = 0; r < sets[m].rows.size(); ++r) {
      by_id[m].emplace(sets[m].rows[r].first, r);
    }
  }

  PredictionSet out;
  out.scheme = first.scheme;
  for (size_t m = 0; m < sets.size(); ++m) {
    if (m) out.model_id += "+";
    out.model_id += sets[m].model_id;
  }
  out.rows.reserve(first.rows.size());
  for (const auto& [id, dist0] : first.rows) {
    Eigen::VectorXd acc = (weights[0] / weight_sum) * dist0.values;
    for (size_t m = 1; m < sets.size(); ++m) {
      auto it = by_id[m].find(id);
      if (it == by_id[m].end()) {
        throw DataError("ensemble: post id \"" + id + "\" missing from \"" +
                        sets[m].model_id + "\"");
      }
      acc += (weights[m] / weight_sum) * sets[m].rows[it->second].second.values;
    }
    double sum = acc.sum();
    if (std::abs(sum - 1.0) > 1e-12) acc /= sum;
    out.rows.emplace_back(id, ProbDist{out.scheme, std::move(acc)});
  }
  return out;
}

std::vector<std::pair<std::string, Label>> decode(const PredictionSet& set) {
  std::vector<std::pair<std::string, Label>> out;
  out.reserve(set.rows.size());
  for (const auto& [id, dist] : set.rows) {
    out.emplace_back(id, dist.argmax());
  }
  return out;
}

void save_predictions(const PredictionSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write predictions: " + path);
  out << "id";
  for (Label l : set.scheme.labels) out << '\t' << to_string(l);
  out << '\n';
  char buf[64];
  for (const auto& [id, dist] : set.rows) {
    out << id;
    for (int i = 0; i < dist.values.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", dist.values(i));
      out << '\t' << buf;
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

PredictionSet load_predictions(const std::string& path,
                               const LabelScheme* expected) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open predictions: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header;
  {
    std::string cell;
    std::istringstream hs(line);
    while (std::getline(hs, cell, '\t')) header.push_back(cell);
  }
  if (header.size() < 2 || header[0] != "id") {
    throw DataError(path + ":1: expected header `id<TAB><label>...`");
  }
  std::vector<Label> file_labels;
  for (size_t i = 1; i < header.size(); ++i) {
    auto l = parse_label(header[i]);
    if (!l) throw DataError(path + ":1: unknown label \"" + header[i] + "\"");
    file_labels.push_back(*l);
  }

  PredictionSet set;
  set.model_id = file_stem(path);
  std::vector<int> col_to_scheme(file_labels.size());
  if (expected) {
    if (file_labels.size() != static_cast<size_t>(expected->size())) {
      throw DataError(path + ": header has " +
                      std::to_string(file_labels.size()) + " labels, scheme \"" +
                      expected->name + "\" has " +
                      std::to_string(expected->size()));
    }
    for (size_t i = 0; i < file_labels.size(); ++i) {
      int pos = expected->index_of(file_labels[i]);
      if (pos < 0) {
        throw DataError(path + ": label " +
                        std::string(to_string(file_labels[i])) +
                        " not in scheme \"" + expected->name + "\"");
      }
      col_to_scheme[i] = pos;
    }
    set.scheme = *expected;
  } else {
    set.scheme = LabelScheme{"custom", file_labels};
    for (const auto& s : builtin_schemes()) {
      if (s.labels == file_labels) {
        set.scheme = s;
        break;
      }
    }
    for (size_t i = 0; i < file_labels.size(); ++i) {
      col_to_scheme[i] = static_cast<int>(i);
    }
  }

  std::set<std::string> seen_ids;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, '\t')) cells.push_back(cell);
    if (cells.size() != header.size()) {
      throw DataError(path + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " columns, got " +
                      std::to_string(cells.size()));
    }
    if (!seen_ids.insert(cells[0]).second) {
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": duplicate post id \"" + cells[0] + "\"");
    }
    Eigen::VectorXd values(set.scheme.size());
    double sum = 0.0;
    for (size_t i = 1; i < cells.size(); ++i) {
      // strtod, not stod: stod throws on subnormal values, which softmax
      // legitimately produces.
      const char* begin = cells[i].c_str();
      char* end = nullptr;
      double p = std::strtod(begin, &end);
      if (end != begin + cells[i].size() || cells[i].empty() ||
          std::isnan(p) || std::isinf(p)) {
        throw DataError(path + ":" + std::to_string(line_no) +
                        ": bad probability \"" + cells[i] + "\"");
      }
      if (p < 0.0 || p > 1.0 + 1e-9) {
        throw DataError(path + ":" + std::to_string(line_no) +
                        ": probability outside [0,1]");
      }
      values(col_to_scheme[i - 1]) = p;
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": probabilities sum to " + std::to_string(sum));
    }
    set.rows.emplace_back(cells[0], ProbDist{set.scheme, std::move(values)});
  }
  return set;
}

}  // namespace cmof
