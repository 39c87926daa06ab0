#include "cmof/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "cmof/error.hpp"

namespace cmof {

namespace {

std::vector<std::string> split_tsv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

bool looks_like_header(const std::vector<std::string>& cells) {
  static const std::set<std::string> header_words = {"label", "labels",
                                                     "category", "class"};
  return header_words.count(lower(cells.back())) > 0;
}

}  // namespace

Dataset load_dataset(const std::string& path, const LabelScheme& scheme) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path);

  Dataset ds{scheme, {}, path};
  std::string line;
  int line_no = 0;
  int expected_cols = 0;
  int synthetic_id = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto cells = split_tsv_line(line);
    if (first_data_row) {
      if ((cells.size() == 2 || cells.size() == 3) && looks_like_header(cells)) {
        continue;  // header row
      }
      first_data_row = false;
      expected_cols = static_cast<int>(cells.size());
      if (expected_cols != 2 && expected_cols != 3) {
        throw DataError(path + ":" + std::to_string(line_no) +
                        ": expected 2 or 3 tab-separated columns, got " +
                        std::to_string(cells.size()));
      }
    }
    if (static_cast<int>(cells.size()) != expected_cols) {
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": expected " + std::to_string(expected_cols) +
                      " columns, got " + std::to_string(cells.size()));
    }
    Post post;
    if (expected_cols == 3) {
      post.id = cells[0];
      post.text = cells[1];
    } else {
      post.id = std::to_string(synthetic_id++);
      post.text = cells[0];
    }
    const std::string& raw_label = cells.back();
    auto label = parse_label_in_scheme(scheme, raw_label);
    if (!label) {
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": label \"" + raw_label + "\" not in scheme \"" +
                      scheme.name + "\"");
    }
    post.label = *label;
    ds.posts.push_back(std::move(post));
  }

  std::set<std::string> seen;
  for (const auto& p : ds.posts) {
    if (p.id.empty()) throw DataError(path + ": empty post id");
    if (!seen.insert(p.id).second) {
      throw DataError(path + ": duplicate post id \"" + p.id + "\"");
    }
  }
  return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write dataset file: " + path);
  out << "id\ttext\tlabel\n";
  for (const auto& p : ds.posts) {
    out << p.id << '\t' << p.text << '\t'
        << (p.label ? to_string(*p.label) : std::string_view("")) << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

std::array<Dataset, 3> split(const Dataset& ds, const SplitSpec& spec) {
  double sum = spec.train + spec.valid + spec.test;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("split ratios must sum to 1");
  }
  if (spec.train < 0 || spec.valid < 0 || spec.test < 0) {
    throw ConfigError("split ratios must be non-negative");
  }

  // Group post indices, one group per class when stratified.
  std::map<int, std::vector<size_t>> groups;
  for (size_t i = 0; i < ds.posts.size(); ++i) {
    if (spec.stratified) {
      if (!ds.posts[i].label) {
        throw DataError("stratified split requires every post labeled (post \"" +
                        ds.posts[i].id + "\" has no label)");
      }
      groups[ds.scheme.index_of(*ds.posts[i].label)].push_back(i);
    } else {
      groups[0].push_back(i);
    }
  }

  std::array<Dataset, 3> parts;
  for (auto& part : parts) {
    part.scheme = ds.scheme;
    part.provenance = ds.provenance;
  }

  const double ratios[3] = {spec.train, spec.valid, spec.test};
  for (auto& [group_key, indices] : groups) {
    std::mt19937_64 rng(spec.seed + static_cast<uint64_t>(group_key) * 0x9E3779B97F4A7C15ULL);
    std::shuffle(indices.begin(), indices.end(), rng);

    // Largest-remainder apportionment; ties favor earlier parts.
    size_t n = indices.size();
    size_t counts[3];
    double frac[3];
    size_t assigned = 0;
    for (int p = 0; p < 3; ++p) {
      double exact = ratios[p] * static_cast<double>(n);
      counts[p] = static_cast<size_t>(std::floor(exact + 1e-9));
      frac[p] = exact - static_cast<double>(counts[p]);
      assigned += counts[p];
    }
    while (assigned < n) {
      int best = 0;
      for (int p = 1; p < 3; ++p) {
        if (frac[p] > frac[best] + 1e-12) best = p;
      }
      ++counts[best];
      frac[best] = -1.0;
      ++assigned;
    }

    size_t pos = 0;
    for (int p = 0; p < 3; ++p) {
      for (size_t k = 0; k < counts[p]; ++k) {
        parts[p].posts.push_back(ds.posts[indices[pos++]]);
      }
    }
  }

  // Restore original dataset order within each part.
  for (auto& part : parts) {
    std::map<std::string, size_t> order;
    for (size_t i = 0; i < ds.posts.size(); ++i) order[ds.posts[i].id] = i;
    std::sort(part.posts.begin(), part.posts.end(),
              [&](const Post& a, const Post& b) {
                return order[a.id] < order[b.id];
              });
  }
  return parts;
}

Label map_olid(const OlidRow& row) {
  const std::string& a = row.subtask_a;
  const std::string& b = row.subtask_b;
  const std::string& c = row.subtask_c;
  if (a == "NOT") {
    if (!b.empty() || !c.empty()) {
      throw DataError("OLID row " + row.id +
                      ": subtask B/C present under NOT");
    }
    return Label::NotOffensive;
  }
  if (a != "OFF") {
    throw DataError("OLID row " + row.id + ": subtask A must be OFF or NOT, got \"" +
                    a + "\"");
  }
  if (b == "UNT") {
    if (!c.empty()) {
      throw DataError("OLID row " + row.id + ": subtask C present under UNT");
    }
    return Label::OffensiveUntargeted;
  }
  if (b != "TIN") {
    throw DataError("OLID row " + row.id +
                    ": subtask B must be TIN or UNT under OFF, got \"" + b + "\"");
  }
  if (c == "IND") return Label::OffensiveTargetedIndividual;
  if (c == "GRP") return Label::OffensiveTargetedGroup;
  if (c == "OTH") return Label::OffensiveTargetedOther;
  throw DataError("OLID row " + row.id +
                  ": subtask C must be IND, GRP or OTH under TIN, got \"" + c +
                  "\"");
}

Dataset load_olid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open OLID file: " + path);

  Dataset ds{scheme_by_name("combined"), {}, path};
  std::string line;
  int line_no = 0;
  bool first = true;
  auto cell = [](const std::string& s) {
    return (s == "NULL" || s == "null") ? std::string() : s;
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto cells = split_tsv_line(line);
    if (cells.size() != 5) {
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": expected 5 columns, got " + std::to_string(cells.size()));
    }
    if (first) {
      first = false;
      if (cells[2] != "OFF" && cells[2] != "NOT") continue;  // header
    }
    OlidRow row{cells[0], cells[1], cells[2], cell(cells[3]), cell(cells[4])};
    ds.posts.push_back({row.id, row.text, map_olid(row)});
  }
  return ds;
}

Dataset combine_for_transfer(const std::vector<Dataset>& datasets) {
  if (datasets.empty()) throw ConfigError("combine_for_transfer: no input datasets");
  Dataset out{scheme_by_name("combined"), {}, "combined"};
  int source_idx = 0;
  for (const auto& ds : datasets) {
    std::string ns = ds.provenance.empty() ? ("ds" + std::to_string(source_idx))
                                           : ds.provenance;
    for (const auto& p : ds.posts) {
      if (p.label && *p.label == Label::NotInLanguage) continue;
      if (p.label && !out.scheme.contains(*p.label)) {
        throw DataError("combine_for_transfer: label " +
                        std::string(to_string(*p.label)) +
                        " not in combined scheme");
      }
      out.posts.push_back({ns + "/" + p.id, p.text, p.label});
    }
    ++source_idx;
  }
  return out;
}

Dataset relabel_scheme(const Dataset& ds, const LabelScheme& target,
                       const RelabelRules& rules) {
  Dataset out{target, {}, ds.provenance};
  for (const auto& p : ds.posts) {
    if (!p.label) {
      out.posts.push_back(p);
      continue;
    }
    Label l = *p.label;
    if (rules.drop.count(l)) continue;
    auto it = rules.translate.find(l);
    if (it != rules.translate.end()) l = it->second;
    if (!target.contains(l)) {
      throw DataError("relabel_scheme: label " + std::string(to_string(l)) +
                      " not in target scheme \"" + target.name +
                      "\" and not covered by a rule");
    }
    out.posts.push_back({p.id, p.text, l});
  }
  return out;
}

}  // namespace cmof
