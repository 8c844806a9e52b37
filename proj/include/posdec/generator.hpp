#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "posdec/bases.hpp"
#include "posdec/error.hpp"
#include "posdec/scale.hpp"
#include "posdec/solver.hpp"

namespace posdec {

struct GenConfig {
  std::size_t state_atoms = 5;
  std::size_t decision_atoms = 1;
  std::size_t kb_entries = 7;
  std::size_t goal_entries = 2;
  std::size_t decisions = 2;
  std::size_t clause_len_max = 2;
  std::vector<ScaleValue> level_pool = {ScaleValue(1, 5), ScaleValue(2, 5), ScaleValue(3, 5), ScaleValue(4, 5),
                                        ScaleValue::one()};
  std::uint64_t seed = 0;
  bool require_consistent_k = false;
  bool require_consistent_g = false;
  std::size_t max_retries = 1000;
};

inline void validate(const GenConfig& cfg) {
  auto fail = [](const std::string& why) { return Error("invalid generator config: " + why); };
  if (!cfg.state_atoms || !cfg.decision_atoms || !cfg.kb_entries || !cfg.goal_entries || !cfg.decisions ||
      !cfg.clause_len_max)
    throw fail("counts must be positive");
  if (cfg.level_pool.empty()) throw fail("empty level pool");
  for (const auto& l : cfg.level_pool)
    if (l == ScaleValue::zero()) throw fail("level pool must exclude 0");
  if (std::find(cfg.level_pool.begin(), cfg.level_pool.end(), ScaleValue::one()) == cfg.level_pool.end())
    throw fail("level pool must contain 1");
}

namespace detail {

class InstanceDrawer {
 public:
  InstanceDrawer(const GenConfig& cfg, std::mt19937_64& rng) : cfg_(cfg), rng_(rng) {
    for (std::size_t i = 0; i < cfg.state_atoms; ++i) state_.push_back("s" + std::to_string(i));
    for (std::size_t i = 0; i < cfg.decision_atoms; ++i) decision_.push_back("d" + std::to_string(i));
  }

  Instance draw() {
    Instance inst;
    for (const auto& a : state_) inst.vocabulary.add(a, AtomKind::State);
    for (const auto& a : decision_) inst.vocabulary.add(a, AtomKind::Decision);

    fill(inst.kb, cfg_.kb_entries, [&] { return knowledge_formula(); });
    fill(inst.goals, cfg_.goal_entries, [&] { return goal_formula(); });

    std::size_t possible = 1;
    for (std::size_t i = 0; i < decision_.size() && possible < cfg_.decisions; ++i) possible *= 3;
    const std::size_t wanted = std::min(cfg_.decisions, possible);
    for (std::size_t attempt = 0; inst.decisions.size() < wanted && attempt < 1000; ++attempt) {
      std::vector<Literal> lits;
      for (const auto& a : decision_) {
        const auto r = pick(3);
        if (r) lits.push_back({a, r == 1});
      }
      Decision d(std::move(lits));
      if (std::find(inst.decisions.begin(), inst.decisions.end(), d) == inst.decisions.end())
        inst.decisions.push_back(std::move(d));
    }
    return inst;
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  ScaleValue level() { return cfg_.level_pool[pick(cfg_.level_pool.size())]; }

  // Literals over distinct atoms drawn from `pool`.
  std::vector<Formula> literals(const std::vector<std::string>& pool, std::size_t n) {
    std::vector<std::string> atoms = pool;
    std::vector<Formula> out;
    for (std::size_t i = 0; i < n && !atoms.empty(); ++i) {
      const auto j = pick(atoms.size());
      out.push_back(pick(2) ? atom(atoms[j]) : neg(atom(atoms[j])));
      atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(j));
    }
    return out;
  }

  Formula disjunction(const std::vector<Formula>& lits) {
    Formula acc = lits.front();
    for (std::size_t i = 1; i < lits.size(); ++i) acc = disj(acc, lits[i]);
    return acc;
  }

  // Rules "l1 & ... & lk -> l" (often conditioned on a decision literal), clauses and facts.
  Formula knowledge_formula() {
    const auto shape = pick(10);
    const std::size_t len = 1 + pick(cfg_.clause_len_max);
    if (shape < 5) {
      std::vector<Formula> antecedent;
      std::size_t state_len = len;
      if (!decision_.empty() && pick(2)) {
        antecedent = literals(decision_, 1);
        state_len = len > 1 ? len - 1 : 0;
      }
      auto lits = literals(state_, state_len + 1);
      const Formula consequent = lits.back();
      lits.pop_back();
      antecedent.insert(antecedent.end(), lits.begin(), lits.end());
      if (antecedent.empty()) return consequent;
      return implies(conj_all(antecedent), consequent);
    }
    if (shape < 8) return disjunction(literals(state_, std::max<std::size_t>(len, 2)));
    return literals(state_, 1).front();
  }

  Formula goal_formula() { return disjunction(literals(state_, pick(3) ? 1 : 2)); }

  template <typename Tag, typename Make>
  void fill(WeightedBase<Tag>& base, std::size_t n, Make&& make) {
    for (std::size_t attempt = 0; base.size() < n && attempt < 50 * n; ++attempt) {
      Formula f = make();
      const bool dup = std::any_of(base.begin(), base.end(), [&](const WeightedFormula& e) { return e.formula == f; });
      if (!dup) base.push_back({f, level()});
    }
  }

  const GenConfig& cfg_;
  std::mt19937_64& rng_;
  std::vector<std::string> state_;
  std::vector<std::string> decision_;
};

}  // namespace detail

/// Seeded random instance. The same config always yields the same instance.
/// With a consistency requirement, instances are redrawn from the same random
/// stream until the requirement holds or `max_retries` is spent.
inline Instance generate(const GenConfig& cfg, const Solver& solver = Solver{}) {
  validate(cfg);
  std::mt19937_64 rng(cfg.seed);
  detail::InstanceDrawer drawer(cfg, rng);
  for (std::size_t attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    Instance inst = drawer.draw();
    if (cfg.require_consistent_k && !solver.is_consistent(inst.kb.classical())) continue;
    if (cfg.require_consistent_g && !solver.is_consistent(inst.goals.classical())) continue;
    return inst;
  }
  throw GenerationExhausted("no instance met the consistency requirements after " +
                            std::to_string(cfg.max_retries) + " retries");
}

/// Generator settings plus a trial count, from "seed=1,trials=500,stateAtoms=6,consistentK,...".
struct GenSpec {
  GenConfig config;
  std::size_t trials = 1;
};

inline GenSpec parse_gen_spec(std::string_view text) {
  GenSpec spec;
  auto number = [](std::string_view key, std::string_view v) -> std::uint64_t {
    if (v.empty()) throw Error("generator option '" + std::string(key) + "' needs a value");
    std::uint64_t out = 0;
    for (char c : v) {
      if (c < '0' || c > '9') throw Error("generator option '" + std::string(key) + "' expects a number");
      out = out * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return out;
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    pos = end + 1;
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    const std::string_view key = item.substr(0, eq);
    const std::string_view val = eq == std::string_view::npos ? std::string_view{} : item.substr(eq + 1);
    auto& c = spec.config;
    if (key == "seed") c.seed = number(key, val);
    else if (key == "trials") spec.trials = number(key, val);
    else if (key == "stateAtoms") c.state_atoms = number(key, val);
    else if (key == "decisionAtoms") c.decision_atoms = number(key, val);
    else if (key == "kbEntries") c.kb_entries = number(key, val);
    else if (key == "goalEntries") c.goal_entries = number(key, val);
    else if (key == "decisions") c.decisions = number(key, val);
    else if (key == "clauseLenMax") c.clause_len_max = number(key, val);
    else if (key == "retries") c.max_retries = number(key, val);
    else if (key == "consistentK") c.require_consistent_k = true;
    else if (key == "consistentG") c.require_consistent_g = true;
    else if (key == "levels") {
      c.level_pool.clear();
      std::size_t p = 0;
      while (p <= val.size()) {
        std::size_t e = val.find(';', p);
        if (e == std::string_view::npos) e = val.size();
        if (e > p) c.level_pool.push_back(ScaleValue::parse(val.substr(p, e - p)));
        p = e + 1;
      }
    } else {
      throw Error("unknown generator option '" + std::string(key) + "'");
    }
  }
  validate(spec.config);
  return spec;
}

}  // namespace posdec
