#include <algorithm>

#include "doctest.h"
#include "tcclab/bracket.hpp"
#include "tcclab/judge.hpp"
#include "test_util.hpp"

using namespace tcclab;

namespace {

Candidate structure(const std::string& file, const std::string& scheme) {
  return {file, parse_bracket_file(testutil::fixture(file)), scheme, std::nullopt};
}

}  // namespace

TEST_SUITE("tcc_judge") {

TEST_CASE("2b is preferred over 2c under labels+terminals") {
  auto verdict = compare({structure("2b.sbt", "labels+terminals"),
                          structure("2c.sbt", "labels+terminals")});
  REQUIRE(verdict.preferred.size() == 1);
  CHECK(verdict.preferred[0] == "2b.sbt");
  CHECK_FALSE(verdict.tie);
  CHECK(verdict.reports[0].report.normalized <
        verdict.reports[1].report.normalized);
}

TEST_CASE("14b is preferred over 14a under path-steps, at the pinned values") {
  auto verdict = compare({structure("14a.sbt", "path-steps"),
                          structure("14b.sbt", "path-steps")});
  REQUIRE(verdict.preferred.size() == 1);
  CHECK(verdict.preferred[0] == "14b.sbt");
  CHECK(verdict.reports[0].report.normalized == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(verdict.reports[1].report.normalized ==
        doctest::Approx(1.5849625007).epsilon(1e-6));
}

TEST_CASE("15b wins despite its larger node count") {
  SoPtr a = parse_bracket_file(testutil::fixture("15a.sbt"));
  SoPtr b = parse_bracket_file(testutil::fixture("15b.sbt"));
  CHECK(b->size() > a->size());
  auto verdict = compare({structure("15a.sbt", "phrase-labels"),
                          structure("15b.sbt", "phrase-labels")});
  REQUIRE(verdict.preferred.size() == 1);
  CHECK(verdict.preferred[0] == "15b.sbt");
}

TEST_CASE("duplicated candidate is a tie, both preferred") {
  auto verdict = compare({structure("2b.sbt", "labels+terminals"),
                          structure("2b.sbt", "labels+terminals")});
  CHECK(verdict.tie);
  CHECK(verdict.preferred.size() == 2);
}

TEST_CASE("verdict is invariant under candidate reordering") {
  auto v1 = compare({structure("2b.sbt", "labels+terminals"),
                     structure("2c.sbt", "labels+terminals")});
  auto v2 = compare({structure("2c.sbt", "labels+terminals"),
                     structure("2b.sbt", "labels+terminals")});
  auto p1 = v1.preferred;
  auto p2 = v2.preferred;
  std::sort(p1.begin(), p1.end());
  std::sort(p2.begin(), p2.end());
  CHECK(p1 == p2);
}

TEST_CASE("relabeling the categories never changes the preferred set") {
  SoPtr b = parse_bracket("[_D old [_D the [_N red boat]]]");
  SoPtr b_renamed = parse_bracket("[_Q zz [_Q ww [_P vv uu]]]");
  SoPtr c = parse_bracket("[_D the [_N red [boat old]]]");
  auto v1 = compare({{"b", b, "labels+terminals", {}},
                     {"c", c, "labels+terminals", {}}});
  auto v2 = compare({{"b", b_renamed, "labels+terminals", {}},
                     {"c", c, "labels+terminals", {}}});
  CHECK(v1.preferred == v2.preferred);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(compare({structure("2b.sbt", "labels+terminals")}),
                  ValidationError);
  CHECK_THROWS_AS(compare({structure("2b.sbt", "labels+terminals"),
                           structure("2c.sbt", "phrase-labels")}),
                  ValidationError);
  CHECK_THROWS_AS(compare({structure("2b.sbt", "nonsense"),
                           structure("2c.sbt", "nonsense")}),
                  DomainError);
  // encoding failure carries the candidate id
  try {
    compare({{"single-leaf", parse_bracket("dog"), "phrase-labels", {}},
             structure("2c.sbt", "phrase-labels")});
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("single-leaf") != std::string::npos);
  }
}

TEST_CASE("equal-path movement candidates tie at tolerance zero") {
  // two structures whose designated movements cross the same number of nodes
  SoPtr m1 = parse_bracket("[kogo{+Q} [_C C{+Q} [_T koj [_V e_pital ~kogo~]]]]");
  SoPtr m2 = parse_bracket("[kakvo{+Q} [_C C{+Q} [_T koj [_V e_pital ~kakvo~]]]]");
  auto verdict = compare({{"m1", m1, "path-steps", {}},
                          {"m2", m2, "path-steps", {}}}, 0.0);
  CHECK(verdict.tie);
  CHECK(verdict.preferred.size() == 2);
}

TEST_CASE("full corpus: 4/4 orderings with honest per-value errors") {
  auto pairs = load_corpus(TCCLAB_FIXTURE_DIR);
  REQUIRE(pairs.size() == 4);
  auto report = evaluate_corpus(pairs);
  CHECK(report.all_correct);
  CHECK(report.correct == 4);
  for (const auto& p : report.pairs) {
    CAPTURE(p.id);
    CHECK(p.ordering_correct);
    if (p.id == "14") {
      CHECK(p.error_grammatical <= 0.005);
      CHECK(p.error_ungrammatical <= 0.005);
    }
  }
}

TEST_CASE("gold labels never influence scoring") {
  auto pairs = load_corpus(TCCLAB_FIXTURE_DIR);
  // flip the labels: the judge still scores the same values
  auto flipped = pairs;
  for (auto& p : flipped) std::swap(p.grammatical, p.ungrammatical);
  auto report = evaluate_corpus(pairs);
  auto flipped_report = evaluate_corpus(flipped);
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    CHECK(report.pairs[i].grammatical_value ==
          flipped_report.pairs[i].ungrammatical_value);
    CHECK(report.pairs[i].ordering_correct !=
          flipped_report.pairs[i].ordering_correct);
  }
  CHECK_FALSE(flipped_report.all_correct);
}

TEST_CASE("empty corpus is a validation error") {
  CHECK_THROWS_AS(evaluate_corpus({}), ValidationError);
  CHECK_THROWS_AS(load_corpus("/nonexistent-dir"), ValidationError);
}

}  // TEST_SUITE
