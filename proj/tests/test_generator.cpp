#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace posdec;

TEST_CASE("same config, same instance") {
  GenConfig cfg;
  cfg.seed = 7;
  CHECK(format_instance(generate(cfg)) == format_instance(generate(cfg)));
  GenConfig other = cfg;
  other.seed = 8;
  CHECK(format_instance(generate(other)) != format_instance(generate(cfg)));
}

TEST_CASE("consistency requirements hold") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.require_consistent_k = true;
    cfg.require_consistent_g = seed % 2 == 0;
    const Instance inst = generate(cfg);
    REQUIRE(is_consistent(inst.kb.classical()));
    if (cfg.require_consistent_g) REQUIRE(is_consistent(inst.goals.classical()));
  }
}

TEST_CASE("generated instances respect the config") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const GenConfig cfg = fixture::corpus_config(seed);
    const Instance inst = generate(cfg);
    REQUIRE_NOTHROW(validate(inst));
    REQUIRE(inst.kb.size() <= cfg.kb_entries);
    REQUIRE(inst.goals.size() <= cfg.goal_entries);
    REQUIRE(inst.decisions.size() <= cfg.decisions);
    REQUIRE_FALSE(inst.decisions.empty());
    REQUIRE(inst.vocabulary.names(AtomKind::State).size() == cfg.state_atoms);
    REQUIRE(inst.vocabulary.names(AtomKind::Decision).size() == cfg.decision_atoms);
    for (const auto& e : inst.kb)
      REQUIRE(std::find(cfg.level_pool.begin(), cfg.level_pool.end(), e.weight) != cfg.level_pool.end());
    for (const auto& e : inst.goals)
      REQUIRE(std::find(cfg.level_pool.begin(), cfg.level_pool.end(), e.weight) != cfg.level_pool.end());
    REQUIRE(load_instance(format_instance(inst)) == inst);
  }
}

TEST_CASE("default-sized instances load back from their file form") {
  GenConfig cfg;
  cfg.seed = 3;
  cfg.state_atoms = 5;
  cfg.kb_entries = 7;
  cfg.goal_entries = 2;
  cfg.decisions = 2;
  const Instance inst = generate(cfg);
  CHECK(inst.kb.size() == 7);
  CHECK(inst.goals.size() == 2);
  CHECK(inst.decisions.size() == 2);
  CHECK(load_instance(format_instance(inst)) == inst);
}

TEST_CASE("invalid configs and exhausted retries") {
  GenConfig cfg;
  cfg.state_atoms = 0;
  CHECK_THROWS_AS(generate(cfg), Error);
  cfg = GenConfig{};
  cfg.level_pool = {ScaleValue(1, 2)};
  CHECK_THROWS_AS(generate(cfg), Error);
  cfg.level_pool = {ScaleValue::zero(), ScaleValue::one()};
  CHECK_THROWS_AS(generate(cfg), Error);

  // One state atom, many certain facts: K is almost never consistent.
  cfg = GenConfig{};
  cfg.state_atoms = 1;
  cfg.kb_entries = 2;
  cfg.clause_len_max = 1;
  cfg.level_pool = {ScaleValue::one()};
  cfg.require_consistent_g = true;
  cfg.goal_entries = 2;
  cfg.max_retries = 3;
  CHECK_THROWS_AS(generate(cfg), GenerationExhausted);
}

TEST_CASE("generator spec strings") {
  const auto spec = parse_gen_spec("seed=1,trials=500,stateAtoms=6,kbEntries=8,goalEntries=3,decisions=3,consistentK,consistentG");
  CHECK(spec.trials == 500);
  CHECK(spec.config.seed == 1);
  CHECK(spec.config.state_atoms == 6);
  CHECK(spec.config.kb_entries == 8);
  CHECK(spec.config.goal_entries == 3);
  CHECK(spec.config.decisions == 3);
  CHECK(spec.config.require_consistent_k);
  CHECK(spec.config.require_consistent_g);
  const auto levels = parse_gen_spec("levels=1/2;1");
  CHECK(levels.config.level_pool == std::vector<ScaleValue>{ScaleValue(1, 2), ScaleValue::one()});
  CHECK_THROWS_AS(parse_gen_spec("bogus=1"), Error);
  CHECK_THROWS_AS(parse_gen_spec("seed=x"), Error);
  CHECK_THROWS_AS(parse_gen_spec("levels=1/2"), Error);
}
