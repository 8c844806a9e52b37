#pragma once

// Fixtures, seeded generators and brute-force oracles shared by the tests.
// Oracles deliberately avoid the library's evaluators: they walk formula
// trees over std::map assignments and use boost::rational directly.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "posdec/posdec.hpp"

namespace fixture {

inline std::string data_path(const std::string& name) { return std::string(POSDEC_DATA_DIR) + "/" + name; }

inline std::string umb_text(const std::string& lambda, const std::string& sigma) {
  return "decision_atoms: u\n"
         "kb:\n"
         "u -> l : 1\n"
         "~u -> ~l : 1\n"
         "u -> ~w : 1\n"
         "(r & ~u) -> w : 1\n"
         "c : 1\n"
         "~r -> ~w : 1\n"
         "c -> r : " + lambda + "\n"
         "goals:\n"
         "~w : 1\n"
         "~l : " + sigma + "\n"
         "decisions:\n"
         "u\n"
         "~u\n";
}

inline posdec::Instance umb(const std::string& lambda = "3/5", const std::string& sigma = "2/5") {
  return posdec::load_instance(umb_text(lambda, sigma));
}

inline posdec::Instance conflict() { return posdec::load_instance_file(data_path("conflict.pdl")); }

inline posdec::Decision dec(const std::string& text) {
  return posdec::decision_from_formula(posdec::parse_formula(text));
}

/// Sizes within the differential-corpus bounds, varied per seed.
inline posdec::GenConfig corpus_config(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto in = [&](std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng() % (hi - lo + 1)); };
  posdec::GenConfig cfg;
  cfg.seed = seed;
  cfg.state_atoms = in(3, 6);
  cfg.decision_atoms = in(1, 2);
  cfg.kb_entries = in(4, 10);
  cfg.goal_entries = in(1, 4);
  cfg.decisions = in(2, 4);
  cfg.clause_len_max = in(2, 3);
  cfg.require_consistent_k = true;
  cfg.require_consistent_g = true;
  return cfg;
}

/// Random formula trees over atoms x0..x{n-1}.
class FormulaGen {
 public:
  FormulaGen(std::uint64_t seed, std::size_t atoms) : rng_(seed) {
    for (std::size_t i = 0; i < atoms; ++i) names_.push_back("x" + std::to_string(i));
  }

  posdec::Formula draw(int depth) {
    using namespace posdec;
    if (depth <= 0 || pick(5) == 0) {
      const auto r = pick(20);
      if (r == 0) return truth();
      if (r == 1) return falsity();
      return atom(names_[pick(names_.size())]);
    }
    switch (pick(6)) {
      case 0: return neg(draw(depth - 1));
      case 1: return conj(draw(depth - 1), draw(depth - 1));
      case 2: return disj(draw(depth - 1), draw(depth - 1));
      case 3: return implies(draw(depth - 1), draw(depth - 1));
      case 4: return iff(draw(depth - 1), draw(depth - 1));
      default: {
        // Short clause, the shape that dominates real bases.
        Formula c = literal();
        for (std::size_t i = 0, n = 1 + pick(3); i < n; ++i) c = disj(c, literal());
        return c;
      }
    }
  }

  posdec::Formula literal() {
    auto a = posdec::atom(names_[pick(names_.size())]);
    return pick(2) ? a : posdec::neg(a);
  }

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::mt19937_64 rng_;
  std::vector<std::string> names_;
};

}  // namespace fixture

namespace oracle {

using Q = boost::rational<long long>;
using Assignment = std::map<std::string, bool>;

inline Q q(const posdec::ScaleValue& v) { return Q(v.numerator(), v.denominator()); }

inline bool eval(const posdec::Formula& f, const Assignment& a) {
  using posdec::Connective;
  switch (f.op()) {
    case Connective::Constant: return f.value();
    case Connective::Atom: return a.at(f.name());
    case Connective::Not: return !eval(f.lhs(), a);
    case Connective::And: return eval(f.lhs(), a) && eval(f.rhs(), a);
    case Connective::Or: return eval(f.lhs(), a) || eval(f.rhs(), a);
    case Connective::Implies: return !eval(f.lhs(), a) || eval(f.rhs(), a);
    case Connective::Iff: return eval(f.lhs(), a) == eval(f.rhs(), a);
  }
  return false;
}

inline std::vector<Assignment> assignments(const std::vector<std::string>& atoms) {
  std::vector<Assignment> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << atoms.size()); ++bits) {
    Assignment a;
    for (std::size_t i = 0; i < atoms.size(); ++i) a[atoms[i]] = (bits >> i) & 1U;
    out.push_back(std::move(a));
  }
  return out;
}

inline std::vector<std::string> atoms_of(const std::vector<posdec::Formula>& fs) {
  std::set<std::string> s;
  for (const auto& f : fs)
    for (const auto& a : f.atoms()) s.insert(a);
  return {s.begin(), s.end()};
}

inline bool consistent(const std::vector<posdec::Formula>& fs) {
  for (const auto& a : assignments(atoms_of(fs)))
    if (std::all_of(fs.begin(), fs.end(), [&](const posdec::Formula& f) { return eval(f, a); })) return true;
  return false;
}

inline bool entails(std::vector<posdec::Formula> fs, const posdec::Formula& g) {
  fs.push_back(posdec::neg(g));
  return !consistent(fs);
}

/// min over entries of max(v, 1 - w).
template <typename Base>
inline Q satisfaction(const Base& base, const Assignment& a) {
  Q out(1);
  for (const auto& e : base) out = std::min(out, eval(e.formula, a) ? Q(1) : Q(1) - q(e.weight));
  return out;
}

inline Q pessimistic_semantic(const posdec::Instance& inst, const posdec::Decision& d) {
  const auto kd = posdec::with_decision(inst.kb, d);
  Q out(1);
  for (const auto& a : assignments(inst.vocabulary.names()))
    out = std::min(out, std::max(satisfaction(inst.goals, a), Q(1) - satisfaction(kd, a)));
  return out;
}

inline Q optimistic_semantic(const posdec::Instance& inst, const posdec::Decision& d) {
  const auto kd = posdec::with_decision(inst.kb, d);
  Q out(0);
  for (const auto& a : assignments(inst.vocabulary.names()))
    out = std::max(out, std::min(satisfaction(inst.goals, a), satisfaction(kd, a)));
  return out;
}

/// Per-subset view of the knowledge base under a decision, by brute force.
struct SubsetFacts {
  bool consistent = false;
  std::vector<std::size_t> entailed;  // goals entailed by S with d
  std::vector<std::size_t> refuted;   // goals whose negation S with d entails
  Q level = Q(1);                     // min weight of S
};

inline std::vector<SubsetFacts> subset_facts(const posdec::Instance& inst, const posdec::Decision& d) {
  const std::size_t m = inst.kb.size();
  std::vector<SubsetFacts> out(std::size_t{1} << m);
  const auto dfs = d.formulas();
  for (std::uint32_t mask = 0; mask < out.size(); ++mask) {
    std::vector<posdec::Formula> s = dfs;
    auto& f = out[mask];
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1U) {
        s.push_back(inst.kb[i].formula);
        f.level = std::min(f.level, q(inst.kb[i].weight));
      }
    f.consistent = consistent(s);
    if (!f.consistent) continue;
    for (std::size_t g = 0; g < inst.goals.size(); ++g) {
      if (entails(s, inst.goals[g].formula)) f.entailed.push_back(g);
      if (entails(s, posdec::neg(inst.goals[g].formula))) f.refuted.push_back(g);
    }
  }
  return out;
}

/// Max over consistent supports of min(level, weight). Non-minimal supports
/// never beat the minimal ones inside them, so all subsets may be scanned.
inline Q pessimistic_args(const posdec::Instance& inst, const posdec::Decision& d) {
  Q best(0);
  for (const auto& f : subset_facts(inst, d)) {
    if (!f.consistent) continue;
    Q beta(0);
    bool missing = false;
    for (std::size_t g = 0; g < inst.goals.size(); ++g)
      if (std::find(f.entailed.begin(), f.entailed.end(), g) == f.entailed.end()) {
        missing = true;
        beta = std::max(beta, q(inst.goals[g].weight));
      }
    const Q weight = missing ? Q(1) - beta : Q(1);
    best = std::max(best, std::min(f.level, weight));
  }
  return best;
}

inline Q optimistic_args(const posdec::Instance& inst, const posdec::Decision& d) {
  Q worst(1);
  for (const auto& f : subset_facts(inst, d)) {
    if (!f.consistent || f.refuted.empty()) continue;
    Q beta(0);
    for (auto g : f.refuted) beta = std::max(beta, q(inst.goals[g].weight));
    worst = std::min(worst, std::max(Q(1) - f.level, Q(1) - beta));
  }
  return worst;
}

/// Arguments rendered as "support | consequences" with sorted members.
inline std::string render(const std::vector<posdec::WeightedFormula>& s, const std::vector<posdec::WeightedFormula>& c) {
  std::vector<std::string> a, b;
  for (const auto& x : s) a.push_back(x.formula.to_string());
  for (const auto& x : c) b.push_back(x.formula.to_string());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::string out;
  for (const auto& x : a) out += x + ";";
  out += " | ";
  for (const auto& x : b) out += x + ";";
  return out;
}

/// Every PRO (or CON) argument by definition: consistent S whose closure no
/// proper subset reaches. CON arguments additionally need a nonempty closure.
inline std::set<std::string> arguments(const posdec::Instance& inst, const posdec::Decision& d, bool pro) {
  const auto facts = subset_facts(inst, d);
  std::set<std::string> out;
  for (std::uint32_t mask = 0; mask < facts.size(); ++mask) {
    const auto& f = facts[mask];
    if (!f.consistent) continue;
    const auto& closure = pro ? f.entailed : f.refuted;
    if (!pro && closure.empty()) continue;
    bool minimal = true;
    for (std::uint32_t sub = (mask - 1) & mask; minimal && sub != mask; sub = (sub - 1) & mask) {
      if ((pro ? facts[sub].entailed : facts[sub].refuted) == closure) minimal = false;
      if (sub == 0) break;
    }
    if (!minimal) continue;
    std::vector<posdec::WeightedFormula> s, c;
    for (std::size_t i = 0; i < inst.kb.size(); ++i)
      if (mask >> i & 1U) s.push_back(inst.kb[i]);
    for (auto g : closure) c.push_back(inst.goals[g]);
    out.insert(render(s, c));
  }
  return out;
}

template <typename Arg>
inline std::set<std::string> rendered(const std::vector<Arg>& args) {
  std::set<std::string> out;
  for (const auto& a : args) out.insert(render(a.support, a.consequences));
  return out;
}

}  // namespace oracle
