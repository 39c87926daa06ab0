#include "cmof/corpus.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "cmof/error.hpp"
#include "helpers.hpp"

using namespace cmof;
using testutil::TempDir;
using testutil::write_file;

TEST_CASE("load_dataset parses two-column rows with synthetic ids") {
  TempDir tmp;
  write_file(tmp.file("d.tsv"),
             "good video\tNot_offensive\n"
             "semma da\tNot_offensive\n");
  Dataset ds = load_dataset(tmp.file("d.tsv"), scheme_by_name("tamil"));
  REQUIRE(ds.size() == 2);
  CHECK(ds.posts[0].text == "good video");
  CHECK(*ds.posts[0].label == Label::NotOffensive);
  CHECK(ds.posts[0].id != ds.posts[1].id);
}

TEST_CASE("load_dataset handles headers, three columns and empty files") {
  TempDir tmp;
  write_file(tmp.file("h.tsv"),
             "id\ttext\tlabel\np1\thello\tNot_offensive\n");
  Dataset ds = load_dataset(tmp.file("h.tsv"), scheme_by_name("tamil"));
  REQUIRE(ds.size() == 1);
  CHECK(ds.posts[0].id == "p1");

  write_file(tmp.file("e.tsv"), "");
  CHECK(load_dataset(tmp.file("e.tsv"), scheme_by_name("tamil")).size() == 0);
}

TEST_CASE("load_dataset reports the offending line number") {
  TempDir tmp;
  write_file(tmp.file("bad.tsv"), "text here\tOffensive\n");
  try {
    load_dataset(tmp.file("bad.tsv"), scheme_by_name("tamil"));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":1") != std::string::npos);
    CHECK(std::string(e.what()).find("Offensive") != std::string::npos);
  }

  write_file(tmp.file("cols.tsv"), "a\tNot_offensive\nonly one column\n");
  try {
    load_dataset(tmp.file("cols.tsv"), scheme_by_name("tamil"));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("load_dataset accepts surface label spellings") {
  TempDir tmp;
  write_file(tmp.file("s.tsv"),
             "a\tOffensive_Untargetede\n"
             "b\tnot-Tamil\n"
             "c\tOffensive_Targeted_Insult_Individual\n");
  Dataset ds = load_dataset(tmp.file("s.tsv"), scheme_by_name("tamil"));
  CHECK(*ds.posts[0].label == Label::OffensiveUntargeted);
  CHECK(*ds.posts[1].label == Label::NotInLanguage);
  CHECK(*ds.posts[2].label == Label::OffensiveTargetedIndividual);
}

TEST_CASE("save/load round-trip preserves content") {
  TempDir tmp;
  Dataset ds;
  ds.scheme = scheme_by_name("tamil");
  ds.posts = {{"x1", "enna da movie", Label::NotOffensive},
              {"x2", "worst talk", Label::OffensiveUntargeted}};
  save_dataset(ds, tmp.file("rt.tsv"));
  Dataset back = load_dataset(tmp.file("rt.tsv"), ds.scheme);
  REQUIRE(back.size() == 2);
  for (size_t i = 0; i < ds.posts.size(); ++i) {
    CHECK(back.posts[i].id == ds.posts[i].id);
    CHECK(back.posts[i].text == ds.posts[i].text);
    CHECK(back.posts[i].label == ds.posts[i].label);
  }
}

namespace {

Dataset make_dataset(const std::vector<Label>& labels) {
  Dataset ds;
  ds.scheme = scheme_by_name("tamil");
  for (size_t i = 0; i < labels.size(); ++i) {
    ds.posts.push_back({"p" + std::to_string(i), "t" + std::to_string(i),
                        labels[i]});
  }
  return ds;
}

}  // namespace

TEST_CASE("split: 10 one-class posts at 8:1:1 give sizes (8,1,1)") {
  Dataset ds = make_dataset(std::vector<Label>(10, Label::NotOffensive));
  auto parts = split(ds, SplitSpec{});
  CHECK(parts[0].size() == 8);
  CHECK(parts[1].size() == 1);
  CHECK(parts[2].size() == 1);
}

TEST_CASE("split is a partition and deterministic") {
  std::vector<Label> labels;
  for (int i = 0; i < 97; ++i) {
    labels.push_back(static_cast<Label>(i % 6));
  }
  Dataset ds = make_dataset(labels);
  SplitSpec spec;
  spec.seed = 42;
  auto a = split(ds, spec);
  auto b = split(ds, spec);
  std::set<std::string> seen;
  size_t total = 0;
  for (int p = 0; p < 3; ++p) {
    REQUIRE(a[p].size() == b[p].size());
    for (size_t i = 0; i < a[p].posts.size(); ++i) {
      CHECK(a[p].posts[i].id == b[p].posts[i].id);
      CHECK(seen.insert(a[p].posts[i].id).second);
    }
    total += a[p].size();
  }
  CHECK(total == ds.size());
}

TEST_CASE("stratified split keeps per-class counts within 1 of the ratio") {
  std::vector<Label> labels(50, Label::NotOffensive);
  labels.insert(labels.end(), 50, Label::OffensiveUntargeted);
  Dataset ds = make_dataset(labels);
  SplitSpec spec;
  spec.seed = 9;
  auto parts = split(ds, spec);
  for (int p = 0; p < 3; ++p) {
    std::map<Label, int> counts;
    for (const auto& post : parts[p].posts) counts[*post.label]++;
    double expect = 50.0 * (p == 0 ? 0.8 : 0.1);
    for (Label l : {Label::NotOffensive, Label::OffensiveUntargeted}) {
      CHECK(std::abs(counts[l] - expect) <= 1.0);
    }
  }
}

TEST_CASE("map_olid implements the full hierarchy table") {
  CHECK(map_olid({"1", "t", "NOT", "", ""}) == Label::NotOffensive);
  CHECK(map_olid({"2", "t", "OFF", "UNT", ""}) == Label::OffensiveUntargeted);
  CHECK(map_olid({"3", "t", "OFF", "TIN", "IND"}) ==
        Label::OffensiveTargetedIndividual);
  CHECK(map_olid({"4", "t", "OFF", "TIN", "GRP"}) ==
        Label::OffensiveTargetedGroup);
  CHECK(map_olid({"5", "t", "OFF", "TIN", "OTH"}) ==
        Label::OffensiveTargetedOther);
  CHECK_THROWS_AS(map_olid({"6", "t", "NOT", "TIN", ""}), DataError);
  CHECK_THROWS_AS(map_olid({"7", "t", "OFF", "UNT", "IND"}), DataError);
  CHECK_THROWS_AS(map_olid({"8", "t", "OFF", "", ""}), DataError);
}

TEST_CASE("load_olid reads the 5-column format with NULL cells") {
  TempDir tmp;
  write_file(tmp.file("olid.tsv"),
             "id\ttweet\tsubtask_a\tsubtask_b\tsubtask_c\n"
             "10\tnice day\tNOT\tNULL\tNULL\n"
             "11\tyou fool\tOFF\tTIN\tIND\n");
  Dataset ds = load_olid(tmp.file("olid.tsv"));
  REQUIRE(ds.size() == 2);
  CHECK(ds.scheme.name == "combined");
  CHECK(*ds.posts[0].label == Label::NotOffensive);
  CHECK(*ds.posts[1].label == Label::OffensiveTargetedIndividual);
}

TEST_CASE("combine_for_transfer drops NOT_IN_LANGUAGE and namespaces ids") {
  Dataset a = make_dataset({Label::NotOffensive, Label::NotOffensive,
                            Label::NotOffensive, Label::NotInLanguage,
                            Label::NotInLanguage});
  a.provenance = "a";
  Dataset combined = combine_for_transfer({a});
  CHECK(combined.size() == 3);
  CHECK(combined.scheme.name == "combined");

  Dataset b = make_dataset({Label::OffensiveUntargeted});
  b.provenance = "b";
  Dataset both = combine_for_transfer({a, b});
  CHECK(both.size() == 4);
  std::set<std::string> ids;
  for (const auto& post : both.posts) CHECK(ids.insert(post.id).second);
  // Same source ids stay distinct through provenance namespacing.
  CHECK(both.posts[0].id != both.posts[3].id);
}

TEST_CASE("combine_for_transfer size arithmetic (5,7,0)") {
  auto source = [](int n, const std::string& prov) {
    Dataset d = make_dataset(std::vector<Label>(n, Label::NotOffensive));
    d.provenance = prov;
    return d;
  };
  Dataset zero = make_dataset(std::vector<Label>(2, Label::NotInLanguage));
  zero.provenance = "z";
  CHECK(combine_for_transfer({source(5, "a"), source(7, "b"), zero}).size() ==
        12);
}

TEST_CASE("relabel_scheme embeds, drops and errors as specified") {
  Dataset six = make_dataset({Label::NotOffensive, Label::NotInLanguage});
  RelabelRules drop_nil;
  drop_nil.drop = {Label::NotInLanguage};
  Dataset five = relabel_scheme(six, scheme_by_name("combined"), drop_nil);
  CHECK(five.size() == 1);

  Dataset widened = relabel_scheme(five, scheme_by_name("tamil"));
  CHECK(widened.size() == 1);
  CHECK(widened.scheme.name == "tamil");

  Dataset other = make_dataset({Label::OffensiveTargetedOther});
  CHECK_THROWS_AS(relabel_scheme(other, scheme_by_name("malayalam")),
                  DataError);
}
