#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "posdec/bases.hpp"
#include "posdec/error.hpp"
#include "posdec/scale.hpp"
#include "posdec/solver.hpp"

namespace posdec {

/// Argument in favour of a decision: support S from K*, the goals C that S and d
/// entail together, and the decision d.
struct ArgumentPro {
  std::vector<WeightedFormula> support;
  std::vector<WeightedFormula> consequences;
  Decision decision;

  friend bool operator==(const ArgumentPro& a, const ArgumentPro& b) {
    return a.support == b.support && a.consequences == b.consequences && a.decision == b.decision;
  }
};

/// Argument against a decision: S and d entail the negation of every goal in C.
struct ArgumentCon {
  std::vector<WeightedFormula> support;
  std::vector<WeightedFormula> consequences;
  Decision decision;

  friend bool operator==(const ArgumentCon& a, const ArgumentCon& b) {
    return a.support == b.support && a.consequences == b.consequences && a.decision == b.decision;
  }
};

struct StrengthPro {
  ScaleValue level;   ///< certainty of the least certain support formula
  ScaleValue weight;  ///< n(priority of the most important goal left out)

  ScaleValue value() const { return std::min(level, weight); }
  friend bool operator==(const StrengthPro&, const StrengthPro&) = default;
};

/// Higher is weaker, i.e. less damaging to the decision.
struct WeaknessCon {
  ScaleValue level;
  ScaleValue weight;

  ScaleValue value() const { return std::max(level, weight); }
  friend bool operator==(const WeaknessCon&, const WeaknessCon&) = default;
};

inline ScaleValue support_level(const std::vector<WeightedFormula>& support) {
  ScaleValue level = ScaleValue::one();
  for (const auto& s : support) level = std::min(level, s.weight);
  return level;
}

namespace detail {

inline bool contains_formula(const std::vector<WeightedFormula>& set, const Formula& f) {
  return std::any_of(set.begin(), set.end(), [&](const WeightedFormula& w) { return w.formula == f; });
}

}  // namespace detail

inline StrengthPro strength_pro(const ArgumentPro& a, const Instance& inst) {
  StrengthPro s{support_level(a.support), ScaleValue::one()};
  bool missing = false;
  ScaleValue beta = ScaleValue::zero();
  for (const auto& g : inst.goals) {
    if (detail::contains_formula(a.consequences, g.formula)) continue;
    missing = true;
    beta = std::max(beta, g.weight);
  }
  if (missing) s.weight = order_reverse(beta);
  return s;
}

inline WeaknessCon weakness_con(const ArgumentCon& a, const Instance&) {
  WeaknessCon w{ScaleValue::zero(), ScaleValue::one()};
  if (!a.support.empty()) w.level = order_reverse(support_level(a.support));
  ScaleValue beta = ScaleValue::zero();
  for (const auto& c : a.consequences) beta = std::max(beta, c.weight);
  w.weight = order_reverse(beta);
  return w;
}

inline bool prefer_pro(const ArgumentPro& a, const ArgumentPro& b, const Instance& inst) {
  return strength_pro(a, inst).value() >= strength_pro(b, inst).value();
}

/// Preference between counterarguments as a comparison of max(level, weight).
inline bool prefer_con(const ArgumentCon& a, const ArgumentCon& b, const Instance& inst) {
  return weakness_con(a, inst).value() >= weakness_con(b, inst).value();
}

/// Goal closures of every support subset of the knowledge base, for one decision.
///
/// Subsets are bit masks over kb entries. For a subset S with S and d consistent,
/// `pro[S]` holds the goals entailed and `con[S]` the goals whose negation is entailed.
class SupportLattice {
 public:
  SupportLattice(const Instance& inst, const Decision& d, const Solver& solver) : inst_(&inst), decision_(d) {
    const std::size_t m = inst.kb.size();
    if (m > solver.options().subset_bound)
      throw EnumerationLimit("knowledge base of " + std::to_string(m) + " entries exceeds subset bound " +
                             std::to_string(solver.options().subset_bound));
    if (inst.goals.size() > 32) throw EnumerationLimit("more than 32 goals");

    const auto k = inst.kb.classical();
    const auto dlits = d.formulas();
    std::vector<Formula> goals, negated;
    for (const auto& g : inst.goals) {
      goals.push_back(g.formula);
      negated.push_back(negate(g.formula));
    }

    std::vector<Formula> full = k;
    full.insert(full.end(), dlits.begin(), dlits.end());
    const bool all_consistent = solver.is_consistent(full);

    // Entailment is monotone, so a goal not entailed by all of K* and d cannot be
    // entailed by a subset. That pruning only holds while K* and d are consistent.
    std::uint32_t pro_candidates = 0, con_candidates = 0;
    for (std::size_t i = 0; i < goals.size(); ++i) {
      if (!all_consistent || solver.entails(full, goals[i])) pro_candidates |= std::uint32_t{1} << i;
      if (!all_consistent || solver.entails(full, negated[i])) con_candidates |= std::uint32_t{1} << i;
    }

    const std::size_t count = std::size_t{1} << m;
    consistent_.assign(count, 0);
    pro_.assign(count, 0);
    con_.assign(count, 0);
    std::vector<Formula> premises;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      bool ok = true;
      std::uint32_t pro = 0, con = 0;
      for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
        const std::uint32_t sub = mask ^ (rest & (~rest + 1));
        if (!consistent_[sub]) {
          ok = false;
          break;
        }
        pro |= pro_[sub];
        con |= con_[sub];
      }
      if (!ok) continue;

      premises = dlits;
      for (std::uint32_t rest = mask; rest; rest &= rest - 1)
        premises.push_back(k[static_cast<std::size_t>(std::countr_zero(rest))]);
      if (!all_consistent && !solver.is_consistent(premises)) continue;
      consistent_[mask] = 1;

      for (std::uint32_t todo = pro_candidates & ~pro & ~con; todo; todo &= todo - 1) {
        const int i = std::countr_zero(todo);
        if (solver.entails(premises, goals[static_cast<std::size_t>(i)])) pro |= std::uint32_t{1} << i;
      }
      for (std::uint32_t todo = con_candidates & ~con & ~pro; todo; todo &= todo - 1) {
        const int i = std::countr_zero(todo);
        if (solver.entails(premises, negated[static_cast<std::size_t>(i)])) con |= std::uint32_t{1} << i;
      }
      pro_[mask] = pro;
      con_[mask] = con;
    }
  }

  std::size_t size() const { return consistent_.size(); }
  bool consistent(std::uint32_t mask) const { return consistent_[mask] != 0; }
  std::uint32_t pro(std::uint32_t mask) const { return pro_[mask]; }
  std::uint32_t con(std::uint32_t mask) const { return con_[mask]; }

  /// S is minimal for its closure when dropping any element shrinks the closure.
  bool minimal_pro(std::uint32_t mask) const { return minimal(mask, pro_); }
  bool minimal_con(std::uint32_t mask) const { return minimal(mask, con_); }

  std::vector<WeightedFormula> support(std::uint32_t mask) const {
    std::vector<WeightedFormula> out;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1)
      out.push_back(inst_->kb[static_cast<std::size_t>(std::countr_zero(rest))]);
    return out;
  }

  std::vector<WeightedFormula> goals(std::uint32_t bits) const {
    std::vector<WeightedFormula> out;
    for (std::uint32_t rest = bits; rest; rest &= rest - 1)
      out.push_back(inst_->goals[static_cast<std::size_t>(std::countr_zero(rest))]);
    return out;
  }

  const Decision& decision() const { return decision_; }

 private:
  static bool minimal_in(std::uint32_t mask, const std::vector<std::uint32_t>& closure) {
    for (std::uint32_t rest = mask; rest; rest &= rest - 1)
      if (closure[mask ^ (rest & (~rest + 1))] == closure[mask]) return false;
    return true;
  }
  bool minimal(std::uint32_t mask, const std::vector<std::uint32_t>& closure) const {
    return consistent(mask) && minimal_in(mask, closure);
  }

  const Instance* inst_;
  Decision decision_;
  std::vector<char> consistent_;
  std::vector<std::uint32_t> pro_;
  std::vector<std::uint32_t> con_;
};

/// Every <S, C, d> with S consistent with d, C the goals S and d entail, and S
/// minimal for that C. Includes the argument with empty support.
inline std::vector<ArgumentPro> enumerate_pro(const SupportLattice& lattice) {
  std::vector<ArgumentPro> out;
  for (std::uint32_t mask = 0; mask < lattice.size(); ++mask)
    if (lattice.minimal_pro(mask))
      out.push_back({lattice.support(mask), lattice.goals(lattice.pro(mask)), lattice.decision()});
  return out;
}

inline std::vector<ArgumentPro> enumerate_pro(const Instance& inst, const Decision& d, const Solver& solver = Solver{}) {
  return enumerate_pro(SupportLattice(inst, d, solver));
}

/// Every <S, C, d> with C nonempty, S and d entailing the negation of each goal of C
/// (and of no other goal), S minimal for that C.
inline std::vector<ArgumentCon> enumerate_con(const SupportLattice& lattice) {
  std::vector<ArgumentCon> out;
  for (std::uint32_t mask = 0; mask < lattice.size(); ++mask)
    if (lattice.con(mask) != 0 && lattice.minimal_con(mask))
      out.push_back({lattice.support(mask), lattice.goals(lattice.con(mask)), lattice.decision()});
  return out;
}

inline std::vector<ArgumentCon> enumerate_con(const Instance& inst, const Decision& d, const Solver& solver = Solver{}) {
  return enumerate_con(SupportLattice(inst, d, solver));
}

namespace detail {

inline void require_feasible(const Instance& inst, const Decision& d, const Solver& solver) {
  auto kd = inst.kb.classical();
  for (auto& f : d.formulas()) kd.push_back(std::move(f));
  if (!solver.is_consistent(kd))
    throw InfeasibleDecision("decision '" + d.to_string() + "' contradicts the knowledge base");
}

}  // namespace detail

inline ScaleValue pessimistic_value(const std::vector<ArgumentPro>& args, const Instance& inst) {
  ScaleValue best = ScaleValue::zero();
  for (const auto& a : args) best = std::max(best, strength_pro(a, inst).value());
  return best;
}

/// min over counterarguments of max(level, weight); 1 when there is none.
inline ScaleValue optimistic_value(const std::vector<ArgumentCon>& args, const Instance& inst) {
  ScaleValue worst = ScaleValue::one();
  for (const auto& a : args) worst = std::min(worst, weakness_con(a, inst).value());
  return worst;
}

/// Pessimistic utility from the best argument in favour of d.
inline ScaleValue pessimistic_args(const Instance& inst, const Decision& d, const Solver& solver = Solver{}) {
  detail::require_feasible(inst, d, solver);
  return pessimistic_value(enumerate_pro(inst, d, solver), inst);
}

/// Optimistic utility capped by the strongest argument against d.
inline ScaleValue optimistic_args(const Instance& inst, const Decision& d, const Solver& solver = Solver{}) {
  detail::require_feasible(inst, d, solver);
  return optimistic_value(enumerate_con(inst, d, solver), inst);
}

/// Decisions grouped by equal score, best group first; ties keep declaration order.
struct Ranking {
  std::vector<std::vector<Decision>> groups;
  std::vector<ScaleValue> scores;  ///< one per group
  std::vector<Decision> excluded;  ///< infeasible decisions, not ranked

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

inline Ranking rank_by_score(const std::vector<std::pair<Decision, ScaleValue>>& scored,
                             std::vector<Decision> excluded = {}) {
  Ranking r;
  r.excluded = std::move(excluded);
  std::vector<ScaleValue> levels;
  for (const auto& [d, s] : scored) levels.push_back(s);
  std::sort(levels.begin(), levels.end(), [](const ScaleValue& a, const ScaleValue& b) { return b < a; });
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (const auto& level : levels) {
    std::vector<Decision> group;
    for (const auto& [d, s] : scored)
      if (s == level) group.push_back(d);
    r.groups.push_back(std::move(group));
    r.scores.push_back(level);
  }
  return r;
}

namespace detail {

template <typename Score>
Ranking rank_feasible(const Instance& inst, Score&& score) {
  std::vector<std::pair<Decision, ScaleValue>> scored;
  std::vector<Decision> excluded;
  for (const auto& d : inst.decisions) {
    try {
      scored.emplace_back(d, score(d));
    } catch (const InfeasibleDecision&) {
      excluded.push_back(d);
    }
  }
  return rank_by_score(scored, std::move(excluded));
}

}  // namespace detail

inline Ranking rank_pessimistic(const Instance& inst, const Solver& solver = Solver{}) {
  return detail::rank_feasible(inst, [&](const Decision& d) { return pessimistic_args(inst, d, solver); });
}

inline Ranking rank_optimistic(const Instance& inst, const Solver& solver = Solver{}) {
  return detail::rank_feasible(inst, [&](const Decision& d) { return optimistic_args(inst, d, solver); });
}

namespace detail {

inline bool strict_subset(const std::vector<WeightedFormula>& a, const std::vector<WeightedFormula>& b) {
  if (a.size() >= b.size()) return false;
  return std::all_of(a.begin(), a.end(), [&](const WeightedFormula& x) { return contains_formula(b, x.formula); });
}

}  // namespace detail

/// Arguments in favour that no other argument beats on both level and weight.
/// Among equal strengths, one whose consequences strictly include the other's wins.
inline std::vector<ArgumentPro> undominated_pro(const std::vector<ArgumentPro>& args, const Instance& inst) {
  std::vector<ArgumentPro> out;
  for (const auto& a : args) {
    const auto sa = strength_pro(a, inst);
    bool dominated = false;
    for (const auto& b : args) {
      const auto sb = strength_pro(b, inst);
      if (sb.level < sa.level || sb.weight < sa.weight) continue;
      if (sb.level > sa.level || sb.weight > sa.weight || detail::strict_subset(a.consequences, b.consequences)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

/// The most damaging counterarguments: those no other beats on both weakness components.
inline std::vector<ArgumentCon> undominated_con(const std::vector<ArgumentCon>& args, const Instance& inst) {
  std::vector<ArgumentCon> out;
  for (const auto& a : args) {
    const auto wa = weakness_con(a, inst);
    bool dominated = false;
    for (const auto& b : args) {
      const auto wb = weakness_con(b, inst);
      if (wb.level > wa.level || wb.weight > wa.weight) continue;
      if (wb.level < wa.level || wb.weight < wa.weight || detail::strict_subset(a.consequences, b.consequences)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

}  // namespace posdec
