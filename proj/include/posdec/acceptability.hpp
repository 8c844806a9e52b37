#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "posdec/argumentation.hpp"
#include "posdec/bases.hpp"
#include "posdec/error.hpp"
#include "posdec/solver.hpp"

// Acceptability of arguments when the knowledge base may be inconsistent
// (pessimistic criterion). Belief arguments undercut each other and attack
// arguments in favour of decisions; a defense fixpoint selects what survives.
namespace posdec {

/// <H, h>: a consistent, inclusion-minimal H from K* entailing h.
struct BeliefArgument {
  std::vector<WeightedFormula> support;
  Formula conclusion;

  /// Certainty of the least certain support formula; 1 for an empty support.
  ScaleValue level() const { return support_level(support); }

  friend bool operator==(const BeliefArgument& a, const BeliefArgument& b) {
    return a.support == b.support && a.conclusion == b.conclusion;
  }
};

/// All minimal consistent supports from the knowledge base for `conclusion`.
inline std::vector<BeliefArgument> belief_arguments_for(const KnowledgeBase& kb, const Formula& conclusion,
                                                        const Solver& solver = Solver{}) {
  const std::size_t m = kb.size();
  if (m > solver.options().subset_bound)
    throw EnumerationLimit("knowledge base of " + std::to_string(m) + " entries exceeds subset bound " +
                           std::to_string(solver.options().subset_bound));
  const auto k = kb.classical();
  const bool kb_consistent = solver.is_consistent(k);
  if (kb_consistent && !solver.entails(k, conclusion)) return {};

  std::vector<std::uint32_t> masks(std::size_t{1} << m);
  for (std::uint32_t i = 0; i < masks.size(); ++i) masks[i] = i;
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });

  std::vector<std::uint32_t> found, inconsistent;
  auto covers = [](const std::vector<std::uint32_t>& sets, std::uint32_t mask) {
    return std::any_of(sets.begin(), sets.end(), [&](std::uint32_t s) { return (s & mask) == s; });
  };
  std::vector<Formula> premises;
  for (auto mask : masks) {
    if (covers(found, mask) || covers(inconsistent, mask)) continue;
    premises.clear();
    for (std::uint32_t rest = mask; rest; rest &= rest - 1)
      premises.push_back(k[static_cast<std::size_t>(std::countr_zero(rest))]);
    if (!solver.entails(premises, conclusion)) continue;
    if (kb_consistent || solver.is_consistent(premises))
      found.push_back(mask);
    else
      inconsistent.push_back(mask);
  }

  std::vector<BeliefArgument> out;
  for (auto mask : found) {
    BeliefArgument b{{}, conclusion};
    for (std::uint32_t rest = mask; rest; rest &= rest - 1)
      b.support.push_back(kb[static_cast<std::size_t>(std::countr_zero(rest))]);
    out.push_back(std::move(b));
  }
  return out;
}

/// Belief arguments for the given conclusions, closed under relevance: the
/// negation of every support formula of an enumerated belief argument becomes a
/// further conclusion, until nothing new appears.
inline std::vector<BeliefArgument> enumerate_belief_args(const Instance& inst,
                                                         const std::vector<Formula>& relevant_conclusions,
                                                         const Solver& solver = Solver{}) {
  std::set<Formula> seen;
  std::vector<Formula> queue;
  auto push = [&](const Formula& f) {
    if (seen.insert(f).second) queue.push_back(f);
  };
  for (const auto& f : relevant_conclusions) push(f);

  std::vector<BeliefArgument> out;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (auto& b : belief_arguments_for(inst.kb, queue[i], solver)) {
      for (const auto& s : b.support) push(negate(s.formula));
      out.push_back(std::move(b));
    }
  }
  return out;
}

/// b1 undercuts b2 when b1's conclusion is equivalent to the negation of a support formula of b2.
inline bool undercuts(const BeliefArgument& b1, const BeliefArgument& b2, const Solver& solver = Solver{}) {
  return std::any_of(b2.support.begin(), b2.support.end(), [&](const WeightedFormula& h) {
    return solver.equivalent(b1.conclusion, negate(h.formula));
  });
}

/// b attacks p when b's conclusion is equivalent to the negation of a support
/// formula or a consequence of p.
inline bool attacks(const BeliefArgument& b, const ArgumentPro& p, const Solver& solver = Solver{}) {
  auto hits = [&](const WeightedFormula& h) { return solver.equivalent(b.conclusion, negate(h.formula)); };
  return std::any_of(p.support.begin(), p.support.end(), hits) ||
         std::any_of(p.consequences.begin(), p.consequences.end(), hits);
}

struct ArgNode {
  std::variant<BeliefArgument, ArgumentPro> argument;

  bool is_belief() const { return std::holds_alternative<BeliefArgument>(argument); }
  const BeliefArgument& belief() const { return std::get<BeliefArgument>(argument); }
  const ArgumentPro& pro() const { return std::get<ArgumentPro>(argument); }

  /// Level for a belief argument, Level_P for an argument in favour of a decision.
  ScaleValue level() const { return is_belief() ? belief().level() : support_level(pro().support); }
};

/// Belief and decision arguments with their undercut and attack edges.
/// Only belief arguments are edge sources.
struct ArgGraph {
  std::vector<ArgNode> nodes;
  /// attackers[i]: nodes with an edge into node i (undercut or attack).
  std::vector<std::vector<std::size_t>> attackers;

  std::size_t size() const { return nodes.size(); }

  static ArgGraph from_nodes(std::vector<ArgNode> nodes, const Solver& solver = Solver{}) {
    ArgGraph g;
    g.nodes = std::move(nodes);
    g.attackers.assign(g.nodes.size(), {});
    for (std::size_t s = 0; s < g.nodes.size(); ++s) {
      if (!g.nodes[s].is_belief()) continue;
      const auto& src = g.nodes[s].belief();
      for (std::size_t t = 0; t < g.nodes.size(); ++t) {
        const auto& dst = g.nodes[t];
        const bool edge = dst.is_belief() ? undercuts(src, dst.belief(), solver) : attacks(src, dst.pro(), solver);
        if (edge) g.attackers[t].push_back(s);
      }
    }
    return g;
  }
};

/// Arguments in favour of every decision, plus the belief arguments that can
/// undercut or attack them (directly or through other belief arguments).
inline ArgGraph build_graph(const Instance& inst, const Solver& solver = Solver{}) {
  std::vector<ArgNode> nodes;
  std::vector<Formula> conclusions;
  for (const auto& d : inst.decisions) {
    for (auto& p : enumerate_pro(inst, d, solver)) {
      for (const auto& s : p.support) conclusions.push_back(negate(s.formula));
      for (const auto& c : p.consequences) conclusions.push_back(negate(c.formula));
      nodes.push_back({std::move(p)});
    }
  }
  for (auto& b : enumerate_belief_args(inst, conclusions, solver)) nodes.push_back({std::move(b)});
  return ArgGraph::from_nodes(std::move(nodes), solver);
}

/// The target is preferred to its attacker: level(target) >= level(attacker).
inline bool defends_itself(const ArgNode& target, const ArgNode& attacker) {
  return target.level() >= attacker.level();
}

enum class DecisionStatus { Candidate, Rejected, Undecided };

inline const char* to_string(DecisionStatus s) {
  switch (s) {
    case DecisionStatus::Candidate: return "candidate";
    case DecisionStatus::Rejected: return "rejected";
    default: return "undecided";
  }
}

struct AcceptabilityResult {
  std::vector<std::size_t> acceptable;
  std::vector<std::size_t> rejected;
  std::vector<std::size_t> abeyance;
  /// F(empty): unattacked nodes and nodes that defend themselves against every attacker.
  std::vector<std::size_t> initial_set;
  /// Applications of F after the initial set until a fixed point.
  std::size_t iterations = 0;
  /// The iteration from the initial set agrees with the least fixpoint from the empty set.
  bool matches_least_fixpoint = false;
  std::vector<std::pair<Decision, DecisionStatus>> status;

  bool is_acceptable(std::size_t i) const { return std::binary_search(acceptable.begin(), acceptable.end(), i); }
  bool is_rejected(std::size_t i) const { return std::binary_search(rejected.begin(), rejected.end(), i); }
};

namespace detail {

// Nodes defended by `in` (a membership mask).
inline std::vector<char> defended_by(const ArgGraph& g, const std::vector<char>& in) {
  std::vector<char> out(g.size(), 0);
  for (std::size_t a = 0; a < g.size(); ++a) {
    bool ok = true;
    for (auto b : g.attackers[a]) {
      if (defends_itself(g.nodes[a], g.nodes[b])) continue;
      // Needs a member of `in` that strongly undercuts b.
      const ScaleValue lb = g.nodes[b].level();
      const bool countered = std::any_of(g.attackers[b].begin(), g.attackers[b].end(), [&](std::size_t c) {
        return in[c] && g.nodes[c].level() > lb;
      });
      if (!countered) {
        ok = false;
        break;
      }
    }
    out[a] = ok;
  }
  return out;
}

inline std::vector<std::size_t> members(const std::vector<char>& mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

}  // namespace detail

/// Acceptable, rejected and in-abeyance arguments, and the resulting status of each decision.
inline AcceptabilityResult acceptable_fixpoint(const ArgGraph& g, const Instance& inst) {
  AcceptabilityResult r;
  const std::vector<char> empty(g.size(), 0);

  // Iterate F from the initial set.
  std::vector<char> current = detail::defended_by(g, empty);
  r.initial_set = detail::members(current);
  std::vector<char> unioned = current;
  while (true) {
    auto next = detail::defended_by(g, current);
    if (next == current) break;
    ++r.iterations;
    for (std::size_t i = 0; i < g.size(); ++i) unioned[i] |= next[i];
    current = std::move(next);
  }

  // Least fixpoint of F from the empty set, computed independently.
  std::vector<char> lfp = empty;
  while (true) {
    auto next = detail::defended_by(g, lfp);
    if (next == lfp) break;
    lfp = std::move(next);
  }
  r.matches_least_fixpoint = lfp == current && unioned == current;

  r.acceptable = detail::members(current);
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (current[a]) continue;
    const bool beaten = std::any_of(g.attackers[a].begin(), g.attackers[a].end(), [&](std::size_t b) {
      return current[b] && !defends_itself(g.nodes[a], g.nodes[b]);
    });
    (beaten ? r.rejected : r.abeyance).push_back(a);
  }

  for (const auto& d : inst.decisions) {
    bool any_acceptable = false, all_rejected = true;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.nodes[i].is_belief() || !(g.nodes[i].pro().decision == d)) continue;
      if (current[i]) any_acceptable = true;
      if (!r.is_rejected(i)) all_rejected = false;
    }
    r.status.emplace_back(d, any_acceptable ? DecisionStatus::Candidate
                             : all_rejected ? DecisionStatus::Rejected
                                            : DecisionStatus::Undecided);
  }
  return r;
}

struct CandidateRanking {
  Ranking ranking;
  std::vector<Decision> rejected;
  std::vector<Decision> undecided;
  /// Candidates contradicting a consistent knowledge base; left out of the ranking.
  std::vector<Decision> infeasible;
  /// Candidates whose best score over all of their arguments (rejected ones
  /// included) differs from the score over acceptable arguments only.
  std::vector<std::pair<Decision, ScaleValue>> alternative_scores;
};

/// Candidate decisions ordered by the best min(Level_P, Weight_P) over their acceptable arguments.
inline CandidateRanking rank_candidates(const ArgGraph& g, const AcceptabilityResult& result, const Instance& inst,
                                        const Solver& solver = Solver{}) {
  CandidateRanking out;
  const bool kb_consistent = solver.is_consistent(inst.kb.classical());
  std::vector<std::pair<Decision, ScaleValue>> scored;
  for (const auto& [d, status] : result.status) {
    if (status == DecisionStatus::Rejected) {
      out.rejected.push_back(d);
      continue;
    }
    if (status == DecisionStatus::Undecided) {
      out.undecided.push_back(d);
      continue;
    }
    if (kb_consistent) {
      auto kd = inst.kb.classical();
      for (auto& f : d.formulas()) kd.push_back(std::move(f));
      if (!solver.is_consistent(kd)) {
        out.infeasible.push_back(d);
        continue;
      }
    }
    ScaleValue best = ScaleValue::zero(), best_all = ScaleValue::zero();
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.nodes[i].is_belief() || !(g.nodes[i].pro().decision == d)) continue;
      const ScaleValue v = strength_pro(g.nodes[i].pro(), inst).value();
      best_all = std::max(best_all, v);
      if (result.is_acceptable(i)) best = std::max(best, v);
    }
    scored.emplace_back(d, best);
    if (best_all != best) out.alternative_scores.emplace_back(d, best_all);
  }
  std::vector<Decision> excluded = out.rejected;
  excluded.insert(excluded.end(), out.undecided.begin(), out.undecided.end());
  excluded.insert(excluded.end(), out.infeasible.begin(), out.infeasible.end());
  out.ranking = rank_by_score(scored, std::move(excluded));
  return out;
}

/// The whole inconsistent-knowledge pipeline.
struct AcceptabilityRun {
  ArgGraph graph;
  AcceptabilityResult result;
  CandidateRanking ranking;
  bool kb_consistent = false;
};

inline AcceptabilityRun run_acceptability(const Instance& inst, const Solver& solver = Solver{}) {
  AcceptabilityRun run;
  run.kb_consistent = solver.is_consistent(inst.kb.classical());
  run.graph = build_graph(inst, solver);
  run.result = acceptable_fixpoint(run.graph, inst);
  run.ranking = rank_candidates(run.graph, run.result, inst, solver);
  return run;
}

}  // namespace posdec
