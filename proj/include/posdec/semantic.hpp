#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "posdec/bases.hpp"
#include "posdec/error.hpp"
#include "posdec/interpretation.hpp"
#include "posdec/scale.hpp"
#include "posdec/solver.hpp"
#include "posdec/truth_table.hpp"

namespace posdec {

/// Weighted min-max: min over entries of max(v(phi), n(w)); 1 for an empty base.
template <typename Tag>
ScaleValue weighted_satisfaction(const Interpretation& omega, const WeightedBase<Tag>& base) {
  ScaleValue out = ScaleValue::one();
  for (const auto& e : base) {
    if (evaluate(omega, e.formula)) continue;
    out = std::min(out, order_reverse(e.weight));
  }
  return out;
}

/// pi_{K_d}(omega): plausibility of a world given the knowledge base.
inline ScaleValue possibility(const Interpretation& omega, const KnowledgeBase& kb_d) {
  return weighted_satisfaction(omega, kb_d);
}

/// mu_G(omega): acceptability of a world given the prioritized goals.
inline ScaleValue utility(const Interpretation& omega, const GoalBase& goals) {
  return weighted_satisfaction(omega, goals);
}

/// Value per interpretation, in canonical interpretation order.
struct DistributionTable {
  std::vector<Interpretation> worlds;
  std::vector<ScaleValue> values;

  ScaleValue max() const {
    ScaleValue m = ScaleValue::zero();
    for (const auto& v : values) m = std::max(m, v);
    return m;
  }
};

namespace detail {

template <typename Tag>
class CompiledBase {
 public:
  CompiledBase(const WeightedBase<Tag>& base, const std::vector<std::string>& atoms) {
    for (const auto& e : base) {
      formulas_.emplace_back(e.formula, atoms);
      reversed_.push_back(order_reverse(e.weight));
    }
  }

  ScaleValue operator()(std::uint64_t bits) const {
    ScaleValue out = ScaleValue::one();
    for (std::size_t i = 0; i < formulas_.size(); ++i)
      if (!formulas_[i](bits) && reversed_[i] < out) out = reversed_[i];
    return out;
  }

 private:
  std::vector<CompiledFormula> formulas_;
  std::vector<ScaleValue> reversed_;
};

template <typename Tag>
DistributionTable tabulate(const WeightedBase<Tag>& base, const Vocabulary& vocab, std::size_t bound) {
  const auto names = vocab.names();
  truth_table::check_bound(names.size(), bound);
  auto shared = std::make_shared<const std::vector<std::string>>(names);
  CompiledBase<Tag> compiled(base, names);
  DistributionTable t;
  const std::uint64_t rows = std::uint64_t{1} << names.size();
  for (std::uint64_t k = 0; k < rows; ++k) {
    const auto bits = canonical_bits(k, names.size());
    t.worlds.emplace_back(shared, bits);
    t.values.push_back(compiled(bits));
  }
  return t;
}

/// pi_K, pi_{K_d} and mu_G side by side over all worlds of the vocabulary.
struct SemanticFrame {
  std::vector<ScaleValue> pi_k;
  std::vector<ScaleValue> pi_kd;
  std::vector<ScaleValue> mu;
};

inline SemanticFrame frame(const Instance& inst, const Decision& d, const SolverOptions& opts) {
  const auto names = inst.vocabulary.names();
  truth_table::check_bound(names.size(), opts.enumeration_bound);
  CompiledBase<KnowledgeTag> k(inst.kb, names);
  CompiledBase<GoalTag> g(inst.goals, names);
  CompiledFormula dec(d.formula(), names);
  SemanticFrame f;
  const std::uint64_t rows = std::uint64_t{1} << names.size();
  f.pi_k.reserve(rows);
  f.pi_kd.reserve(rows);
  f.mu.reserve(rows);
  for (std::uint64_t bits = 0; bits < rows; ++bits) {
    f.pi_k.push_back(k(bits));
    // (d, 1) contributes n(1) = 0 on worlds falsifying d.
    f.pi_kd.push_back(dec(bits) ? f.pi_k.back() : ScaleValue::zero());
    f.mu.push_back(g(bits));
  }

  auto normalized = [](const std::vector<ScaleValue>& v) {
    return std::any_of(v.begin(), v.end(), [](const ScaleValue& x) { return x == ScaleValue::one(); });
  };
  if (!normalized(f.pi_k)) throw NotNormalized("knowledge base is inconsistent; pi_K is not normalized");
  if (!normalized(f.mu)) throw NotNormalized("goal base is inconsistent; mu_G is not normalized");
  if (!normalized(f.pi_kd)) throw InfeasibleDecision("decision '" + d.to_string() + "' contradicts the knowledge base");
  return f;
}

}  // namespace detail

inline DistributionTable possibility_distribution(const Instance& inst, const Decision& d,
                                                  const SolverOptions& opts = {}) {
  return detail::tabulate(with_decision(inst.kb, d), inst.vocabulary, opts.enumeration_bound);
}

inline DistributionTable utility_distribution(const Instance& inst, const SolverOptions& opts = {}) {
  return detail::tabulate(inst.goals, inst.vocabulary, opts.enumeration_bound);
}

/// E_*(d) = min over worlds of max(mu_G, n(pi_{K_d})), by enumerating every world.
inline ScaleValue pessimistic_semantic(const Instance& inst, const Decision& d, const SolverOptions& opts = {}) {
  const auto f = detail::frame(inst, d, opts);
  ScaleValue out = ScaleValue::one();
  for (std::size_t i = 0; i < f.mu.size(); ++i) out = std::min(out, std::max(f.mu[i], order_reverse(f.pi_kd[i])));
  return out;
}

/// E^*(d) = max over worlds of min(mu_G, pi_{K_d}). The order-preserving map
/// between the two scales is the identity under commensurateness.
inline ScaleValue optimistic_semantic(const Instance& inst, const Decision& d, const SolverOptions& opts = {}) {
  const auto f = detail::frame(inst, d, opts);
  ScaleValue out = ScaleValue::zero();
  for (std::size_t i = 0; i < f.mu.size(); ++i) out = std::max(out, std::min(f.mu[i], f.pi_kd[i]));
  return out;
}

}  // namespace posdec
