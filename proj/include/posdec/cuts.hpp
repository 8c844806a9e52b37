#pragma once

#include <algorithm>
#include <vector>

#include "posdec/bases.hpp"
#include "posdec/error.hpp"
#include "posdec/scale.hpp"
#include "posdec/solver.hpp"

// Syntactic utilities: level cuts plus classical entailment, no model enumeration.
namespace posdec {

/// Candidate levels for the cut searches: {0, 1}, every weight of K_d and G,
/// and the order-reverse of each. Strictly increasing.
class CutGrid {
 public:
  CutGrid(const KnowledgeBase& kb_d, const GoalBase& goals) {
    values_ = {ScaleValue::zero(), ScaleValue::one()};
    for (const auto& e : kb_d) add(e.weight);
    for (const auto& e : goals) add(e.weight);
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  }

  CutGrid(const Instance& inst, const Decision& d) : CutGrid(with_decision(inst.kb, d), inst.goals) {}

  const std::vector<ScaleValue>& values() const { return values_; }

 private:
  void add(const ScaleValue& v) {
    values_.push_back(v);
    values_.push_back(order_reverse(v));
  }

  std::vector<ScaleValue> values_;
};

/// (K_d)_alpha |- every formula of (G) strictly above n(alpha).
inline bool pessimistic_cut_holds(const KnowledgeBase& kb_d, const GoalBase& goals, const ScaleValue& alpha,
                                  const Solver& solver) {
  const auto premises = cut(kb_d, alpha, false);
  for (const auto& g : cut(goals, order_reverse(alpha), true))
    if (!solver.entails(premises, g)) return false;
  return true;
}

/// (K_d) and (G), both cut strictly above n(alpha), are jointly consistent.
inline bool optimistic_cut_holds(const KnowledgeBase& kb_d, const GoalBase& goals, const ScaleValue& alpha,
                                 const Solver& solver) {
  const ScaleValue level = order_reverse(alpha);
  auto all = cut(kb_d, level, true);
  for (auto& g : cut(goals, level, true)) all.push_back(std::move(g));
  return solver.is_consistent(all);
}

namespace detail {

inline void require_normalized_and_feasible(const Instance& inst, const Decision& d, const Solver& solver) {
  const auto k = inst.kb.classical();
  if (!solver.is_consistent(k)) throw NotNormalized("knowledge base is inconsistent");
  if (!solver.is_consistent(inst.goals.classical())) throw NotNormalized("goal base is inconsistent");
  auto kd = k;
  for (auto& f : d.formulas()) kd.push_back(std::move(f));
  if (!solver.is_consistent(kd)) throw InfeasibleDecision("decision '" + d.to_string() + "' contradicts the knowledge base");
}

template <typename Pred>
ScaleValue max_on_grid(const CutGrid& grid, Pred&& holds) {
  const auto& v = grid.values();
  for (auto it = v.rbegin(); it != v.rend(); ++it)
    if (holds(*it)) return *it;
  return ScaleValue::zero();
}

}  // namespace detail

/// E_*(d) as the largest grid level alpha with (K_d)_alpha |- (G)_{>n(alpha)}.
inline ScaleValue pessimistic_cuts(const Instance& inst, const Decision& d, const Solver& solver = Solver{}) {
  detail::require_normalized_and_feasible(inst, d, solver);
  const auto kb_d = with_decision(inst.kb, d);
  return detail::max_on_grid(CutGrid(kb_d, inst.goals), [&](const ScaleValue& a) {
    return pessimistic_cut_holds(kb_d, inst.goals, a, solver);
  });
}

/// E^*(d) as the largest grid level alpha with (K_d)_{>n(alpha)} and (G)_{>n(alpha)} consistent.
inline ScaleValue optimistic_cuts(const Instance& inst, const Decision& d, const Solver& solver = Solver{}) {
  detail::require_normalized_and_feasible(inst, d, solver);
  const auto kb_d = with_decision(inst.kb, d);
  return detail::max_on_grid(CutGrid(kb_d, inst.goals), [&](const ScaleValue& a) {
    return optimistic_cut_holds(kb_d, inst.goals, a, solver);
  });
}

}  // namespace posdec
