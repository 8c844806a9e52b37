#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace posdec;

TEST_CASE("umbrella file loads") {
  const Instance inst = load_instance_file(fixture::data_path("umb.pdl"));
  CHECK(inst.kb.size() == 7);
  CHECK(inst.goals.size() == 2);
  CHECK(inst.decisions == std::vector<Decision>{fixture::dec("u"), fixture::dec("~u")});
  CHECK(inst.vocabulary.names(AtomKind::Decision) == std::vector<std::string>{"u"});
  CHECK(inst.vocabulary.names(AtomKind::State) == std::vector<std::string>{"c", "l", "r", "w"});
  CHECK(inst.kb[6].weight == ScaleValue(3, 5));
  CHECK(inst.goals[1].weight == ScaleValue(2, 5));
  CHECK(inst.warnings.empty());
  CHECK(inst == fixture::umb());
}

TEST_CASE("load failures") {
  CHECK_THROWS_AS(load_instance("decision_atoms: u\nkb:\na : 1.5\ngoals:\na : 1\ndecisions:\nu\n"), ScaleError);
  CHECK_THROWS_AS(load_instance("decision_atoms: u\nkb:\na : 1\ngoals:\na : 1\ndecisions:\n"), VocabError);
  CHECK_THROWS_AS(load_instance("decision_atoms: u\nkb:\na : 1\ngoals:\nu : 1\ndecisions:\nu\n"), VocabError);
  CHECK_THROWS_AS(load_instance("decision_atoms: u\nkb:\na -> : 1\ngoals:\ndecisions:\nu\n"), ParseError);
  CHECK_THROWS_AS(load_instance("a : 1\n"), ParseError);
  CHECK_THROWS_AS(load_instance("decision_atoms: u\nkb:\na\ndecisions:\nu\n"), ParseError);
  CHECK_THROWS_AS(load_instance("decision_atoms: u\nstate_atoms: a\nkb:\nb : 1\ndecisions:\nu\n"), UnknownAtom);
  CHECK_THROWS_AS(load_instance("decision_atoms: u\nkb:\na : 1\ndecisions:\nu & ~u\n"), VocabError);
  CHECK_THROWS_AS(load_instance_file(fixture::data_path("no-such-file.pdl")), ParseError);
}

TEST_CASE("parse errors point at the offending line") {
  try {
    load_instance_file(fixture::data_path("broken.pdl"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 9);
  }
}

TEST_CASE("zero weights are dropped and duplicates merged, with warnings") {
  const Instance inst = load_instance(
      "decision_atoms: u\nkb:\na : 0\nb : 1/5\nb : 3/5\nu -> a : 1\ngoals:\na : 1\ndecisions:\nu\ntrue\nu\n");
  REQUIRE(inst.kb.size() == 2);
  CHECK(inst.kb[0].formula == atom("b"));
  CHECK(inst.kb[0].weight == ScaleValue(3, 5));
  CHECK(inst.decisions == std::vector<Decision>{fixture::dec("u"), Decision{}});
  CHECK(inst.warnings.size() == 3);
}

TEST_CASE("comments, blank lines and decimal weights") {
  const Instance inst = load_instance(
      "# header\n\ndecision_atoms: u, v   # two\nkb:\n  a | b : 0.25\ngoals:\na : .5\ndecisions:\nu & ~v\n");
  CHECK(inst.kb[0].weight == ScaleValue(1, 4));
  CHECK(inst.goals[0].weight == ScaleValue(1, 2));
  CHECK(inst.decisions.front().to_string() == "u & ~v");
}

TEST_CASE("formatted instances load back unchanged") {
  const Instance umb = fixture::umb();
  CHECK(load_instance(format_instance(umb)) == umb);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance inst = generate(fixture::corpus_config(seed));
    const std::string text = format_instance(inst);
    const Instance back = load_instance(text);
    REQUIRE(back == inst);
    REQUIRE(format_instance(back) == text);
  }
}
