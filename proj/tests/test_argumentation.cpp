#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace posdec;

namespace {

const Decision u = fixture::dec("u");
const Decision nu = fixture::dec("~u");

bool feasible(const Instance& inst, const Decision& d) {
  auto k = inst.kb.classical();
  for (auto& f : d.formulas()) k.push_back(f);
  return is_consistent(k);
}

// Small corpus for brute-force comparisons: at most 7 knowledge entries.
Instance small(std::uint64_t seed) {
  GenConfig cfg = fixture::corpus_config(seed);
  cfg.kb_entries = std::min<std::size_t>(cfg.kb_entries, 7);
  return generate(cfg);
}

const ArgumentPro& with_goal(const std::vector<ArgumentPro>& args) {
  for (const auto& a : args)
    if (!a.consequences.empty()) return a;
  throw std::runtime_error("no goal-bearing argument");
}

}  // namespace

TEST_CASE("umbrella arguments in favour") {
  const Instance umb = fixture::umb();
  const auto pu = enumerate_pro(umb, u);
  CHECK(oracle::rendered(pu) == std::set<std::string>{"u -> ~w; | ~w;", " | "});
  CHECK(oracle::rendered(enumerate_pro(umb, nu)) == std::set<std::string>{"~u -> ~l; | ~l;", " | "});
  for (const auto& a : pu) CHECK(a.decision == u);
}

TEST_CASE("umbrella arguments against") {
  const Instance umb = fixture::umb();
  CHECK(oracle::rendered(enumerate_con(umb, u)) == std::set<std::string>{"u -> l; | ~l;"});
  CHECK(oracle::rendered(enumerate_con(umb, nu)) == std::set<std::string>{"c;c -> r;r & ~u -> w; | ~w;"});
}

TEST_CASE("umbrella strengths and weaknesses") {
  const Instance umb = fixture::umb();
  CHECK(strength_pro(with_goal(enumerate_pro(umb, u)), umb) == StrengthPro{ScaleValue::one(), ScaleValue(3, 5)});
  CHECK(strength_pro(with_goal(enumerate_pro(umb, nu)), umb) == StrengthPro{ScaleValue::one(), ScaleValue::zero()});
  CHECK(weakness_con(enumerate_con(umb, u).front(), umb) == WeaknessCon{ScaleValue::zero(), ScaleValue(3, 5)});
  CHECK(weakness_con(enumerate_con(umb, nu).front(), umb) == WeaknessCon{ScaleValue(2, 5), ScaleValue::zero()});

  const ArgumentPro everything{{}, umb.goals.entries(), u};
  CHECK(strength_pro(everything, umb) == StrengthPro{ScaleValue::one(), ScaleValue::one()});
  const ArgumentCon certain{{umb.kb[0]}, {umb.goals[0]}, u};
  CHECK(weakness_con(certain, umb) == WeaknessCon{ScaleValue::zero(), ScaleValue::zero()});
}

TEST_CASE("argument preference") {
  const Instance umb = fixture::umb();
  const auto a = with_goal(enumerate_pro(umb, u)), b = with_goal(enumerate_pro(umb, nu));
  CHECK(prefer_pro(a, b, umb));
  CHECK_FALSE(prefer_pro(b, a, umb));
  CHECK(prefer_pro(a, a, umb));

  // (level 1, weight 0) against (level 3/5, weight 1).
  const Instance inst = load_instance("decision_atoms: u\nkb:\nu -> g : 3/5\ngoals:\ng : 1\nh : 1\ndecisions:\nu\n");
  const ArgumentPro weak{{}, {}, u};
  const ArgumentPro strong{{inst.kb[0]}, inst.goals.entries(), u};
  CHECK(strength_pro(weak, inst) == StrengthPro{ScaleValue::one(), ScaleValue::zero()});
  CHECK(strength_pro(strong, inst) == StrengthPro{ScaleValue(3, 5), ScaleValue::one()});
  CHECK_FALSE(prefer_pro(weak, strong, inst));
}

TEST_CASE("umbrella argument-based utilities and rankings") {
  const Instance umb = fixture::umb();
  CHECK(pessimistic_args(umb, u) == ScaleValue(3, 5));
  CHECK(pessimistic_args(umb, nu) == ScaleValue::zero());
  CHECK(optimistic_args(umb, u) == ScaleValue(3, 5));
  CHECK(optimistic_args(umb, nu) == ScaleValue(2, 5));
  CHECK(rank_pessimistic(umb).groups == std::vector<std::vector<Decision>>{{u}, {nu}});
  CHECK(rank_optimistic(umb).groups == std::vector<std::vector<Decision>>{{u}, {nu}});
  CHECK(rank_optimistic(fixture::umb("1/5", "9/10")).groups == std::vector<std::vector<Decision>>{{nu}, {u}});
  CHECK(optimistic_args(fixture::umb("1/5", "9/10"), nu) == ScaleValue(4, 5));
  CHECK(optimistic_args(fixture::umb("1/5", "9/10"), u) == ScaleValue(1, 10));
}

TEST_CASE("degenerate argument sets") {
  const Instance none = load_instance("decision_atoms: u\nkb:\na : 1/2\ngoals:\ng : 1\ndecisions:\nu\n");
  CHECK(oracle::rendered(enumerate_pro(none, u)) == std::set<std::string>{" | "});
  CHECK(enumerate_con(none, u).empty());
  CHECK(pessimistic_args(none, u) == ScaleValue::zero());
  CHECK(optimistic_args(none, u) == ScaleValue::one());

  const Instance no_goals = load_instance("decision_atoms: u\nkb:\na : 1/2\ngoals:\ndecisions:\nu\n");
  CHECK(pessimistic_args(no_goals, u) == ScaleValue::one());

  const Instance outright = load_instance("decision_atoms: u\nkb:\nu -> g : 1\ngoals:\ng : 1\ndecisions:\nu\n");
  CHECK(enumerate_con(outright, u).empty());
}

TEST_CASE("single decisions and symmetric decisions") {
  const Instance one = load_instance("decision_atoms: u\nkb:\nu -> g : 1/2\ngoals:\ng : 1\ndecisions:\nu\n");
  CHECK(rank_pessimistic(one).groups.size() == 1);
  CHECK(rank_optimistic(one).groups.size() == 1);
  const Instance twins = load_instance(
      "decision_atoms: u, v\nkb:\nu -> g : 1/2\nv -> g : 1/2\ngoals:\ng : 1\ndecisions:\nu\nv\n");
  CHECK(rank_pessimistic(twins).groups == std::vector<std::vector<Decision>>{{fixture::dec("u"), fixture::dec("v")}});
}

TEST_CASE("infeasible decisions are excluded from rankings") {
  const Instance inst =
      load_instance("decision_atoms: u\nkb:\n~u : 1\n~u -> g : 1/2\ngoals:\ng : 1\ndecisions:\nu\n~u\n");
  CHECK_THROWS_AS(pessimistic_args(inst, u), InfeasibleDecision);
  const auto r = rank_pessimistic(inst);
  CHECK(r.groups == std::vector<std::vector<Decision>>{{nu}});
  CHECK(r.excluded == std::vector<Decision>{u});
}

TEST_CASE("subset bound") {
  SolverOptions o;
  o.subset_bound = 5;
  CHECK_THROWS_AS(enumerate_pro(fixture::umb(), u, Solver(o)), EnumerationLimit);
}

TEST_CASE("argument sets match the definition by brute force") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Instance inst = small(seed);
    for (const auto& d : inst.decisions) {
      if (!feasible(inst, d)) continue;
      REQUIRE(oracle::rendered(enumerate_pro(inst, d)) == oracle::arguments(inst, d, true));
      REQUIRE(oracle::rendered(enumerate_con(inst, d)) == oracle::arguments(inst, d, false));
      REQUIRE(oracle::q(pessimistic_args(inst, d)) == oracle::pessimistic_args(inst, d));
      REQUIRE(oracle::q(optimistic_args(inst, d)) == oracle::optimistic_args(inst, d));
    }
  }
}

TEST_CASE("argument invariants") {
  const Solver solver;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const Instance inst = generate(fixture::corpus_config(seed));
    for (const auto& d : inst.decisions) {
      if (!feasible(inst, d)) continue;
      for (const auto& a : enumerate_pro(inst, d)) {
        auto premises = d.formulas();
        for (const auto& s : a.support) premises.push_back(s.formula);
        REQUIRE(solver.is_consistent(premises));
        // Closure: exactly the goals entailed.
        for (const auto& g : inst.goals)
          REQUIRE(solver.entails(premises, g.formula) == detail::contains_formula(a.consequences, g.formula));
        // Minimality: dropping any support element changes the closure.
        for (std::size_t drop = 0; drop < a.support.size(); ++drop) {
          auto fewer = d.formulas();
          for (std::size_t i = 0; i < a.support.size(); ++i)
            if (i != drop) fewer.push_back(a.support[i].formula);
          bool same = true;
          for (const auto& g : inst.goals)
            if (solver.entails(fewer, g.formula) != detail::contains_formula(a.consequences, g.formula)) same = false;
          REQUIRE_FALSE(same);
        }
      }
      for (const auto& a : enumerate_con(inst, d)) {
        REQUIRE_FALSE(a.consequences.empty());
        auto premises = d.formulas();
        for (const auto& s : a.support) premises.push_back(s.formula);
        for (const auto& c : a.consequences) REQUIRE(solver.entails(premises, neg(c.formula)));
      }
    }
  }
}

TEST_CASE("preferences are total preorders") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = generate(fixture::corpus_config(seed));
    for (const auto& d : inst.decisions) {
      if (!feasible(inst, d)) continue;
      const auto pros = enumerate_pro(inst, d);
      const auto cons = enumerate_con(inst, d);
      for (const auto& a : pros)
        for (const auto& b : pros) {
          REQUIRE((prefer_pro(a, b, inst) || prefer_pro(b, a, inst)));
          for (const auto& c : pros)
            if (prefer_pro(a, b, inst) && prefer_pro(b, c, inst)) REQUIRE(prefer_pro(a, c, inst));
        }
      for (const auto& a : cons)
        for (const auto& b : cons) {
          REQUIRE((prefer_con(a, b, inst) || prefer_con(b, a, inst)));
          for (const auto& c : cons)
            if (prefer_con(a, b, inst) && prefer_con(b, c, inst)) REQUIRE(prefer_con(a, c, inst));
        }
    }
  }
}

TEST_CASE("utilities do not depend on the order of base entries") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Instance inst = generate(fixture::corpus_config(seed));
    Instance shuffled = inst;
    auto kb = inst.kb.entries();
    auto goals = inst.goals.entries();
    std::shuffle(kb.begin(), kb.end(), rng);
    std::shuffle(goals.begin(), goals.end(), rng);
    shuffled.kb = KnowledgeBase(kb);
    shuffled.goals = GoalBase(goals);
    for (const auto& d : inst.decisions) {
      if (!feasible(inst, d)) continue;
      REQUIRE(pessimistic_args(shuffled, d) == pessimistic_args(inst, d));
      REQUIRE(optimistic_args(shuffled, d) == optimistic_args(inst, d));
      REQUIRE(oracle::rendered(enumerate_pro(shuffled, d)) == oracle::rendered(enumerate_pro(inst, d)));
      std::multiset<std::pair<ScaleValue, ScaleValue>> s1, s2;
      for (const auto& a : enumerate_pro(inst, d)) s1.insert({strength_pro(a, inst).level, strength_pro(a, inst).weight});
      for (const auto& a : enumerate_pro(shuffled, d))
        s2.insert({strength_pro(a, shuffled).level, strength_pro(a, shuffled).weight});
      REQUIRE(s1 == s2);
    }
  }
}

TEST_CASE("a conflict needing two goals makes the optimistic argument value an upper bound") {
  // K_u entails ~g1 | ~g2 but neither negation alone.
  const Instance inst =
      load_instance("decision_atoms: u\nkb:\nu -> ~g1 | ~g2 : 1\ngoals:\ng1 : 1\ng2 : 1\ndecisions:\nu\n");
  CHECK(enumerate_con(inst, u).empty());
  CHECK(optimistic_args(inst, u) == ScaleValue::one());
  CHECK(optimistic_cuts(inst, u) == ScaleValue::zero());
  CHECK(has_multi_goal_conflict(inst, u));
  // In the umbrella base ~w and ~l together force ~u and then w, yet the
  // single-goal conflicts already pin the optimistic value down.
  const Instance umb = fixture::umb();
  CHECK(has_multi_goal_conflict(umb, u));
  CHECK(optimistic_args(umb, u) == optimistic_cuts(umb, u));
  CHECK(optimistic_args(umb, nu) == optimistic_cuts(umb, nu));
}

TEST_CASE("minimal conflicts match brute force") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    fixture::FormulaGen gen(seed, 3 + seed % 3);
    std::vector<Formula> fs;
    for (std::size_t i = 0, n = 2 + gen.pick(6); i < n; ++i) fs.push_back(gen.pick(2) ? gen.literal() : gen.draw(2));
    std::set<std::uint32_t> expected;
    for (std::uint32_t mask = 0; mask < (1U << fs.size()); ++mask) {
      auto subset = [&](std::uint32_t m) {
        std::vector<Formula> out;
        for (std::size_t i = 0; i < fs.size(); ++i)
          if (m >> i & 1U) out.push_back(fs[i]);
        return out;
      };
      if (oracle::consistent(subset(mask))) continue;
      bool minimal = true;
      for (std::size_t i = 0; i < fs.size(); ++i)
        if ((mask >> i & 1U) && !oracle::consistent(subset(mask & ~(1U << i)))) minimal = false;
      if (minimal) expected.insert(mask);
    }
    const auto got = minimal_conflicts(fs, gen.names());
    REQUIRE(std::set<std::uint32_t>(got.begin(), got.end()) == expected);
  }
}

TEST_CASE("displayed arguments are the undominated ones") {
  const Instance umb = fixture::umb();
  const auto pro_nu = undominated_pro(enumerate_pro(umb, nu), umb);
  CHECK(oracle::rendered(pro_nu) == std::set<std::string>{"~u -> ~l; | ~l;"});
  const auto pro_u = undominated_pro(enumerate_pro(umb, u), umb);
  CHECK(oracle::rendered(pro_u) == std::set<std::string>{"u -> ~w; | ~w;"});
  CHECK(undominated_con(enumerate_con(umb, u), umb).size() == 1);
}
